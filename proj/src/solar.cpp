#include "agripv/solar.hpp"

#include <algorithm>
#include <string>

namespace agripv {

double wrap180(double deg) {
    double w = std::fmod(deg + 180.0, 360.0);
    if (w <= 0.0) w += 360.0;
    return w - 180.0;
}

void Site::validate() const {
    if (latitude_deg < -90.0 || latitude_deg > 90.0)
        throw ConfigError("site latitude out of [-90, 90]: " + std::to_string(latitude_deg));
    if (longitude_deg < -180.0 || longitude_deg > 180.0)
        throw ConfigError("site longitude out of [-180, 180]: " + std::to_string(longitude_deg));
    if (timezone_hours < -12.0 || timezone_hours > 14.0)
        throw ConfigError("site timezone offset out of [-12, 14]: " + std::to_string(timezone_hours));
}

double AngleLimits::clamp(double deg, bool* clamped) const {
    if (deg < lo_deg) {
        if (clamped) *clamped = true;
        return lo_deg;
    }
    if (deg > hi_deg) {
        if (clamped) *clamped = true;
        return hi_deg;
    }
    return deg;
}

double julian_day(const CivilTime& t, double timezone_hours) {
    const double ut_hours =
        t.hour + t.minute / 60.0 + t.second / 3600.0 - timezone_hours;
    const int a = (14 - t.month) / 12;
    const long long y = t.year + 4800 - a;
    const long long m = t.month + 12 * a - 3;
    const long long jdn = t.day + (153 * m + 2) / 5 + 365 * y + y / 4 - y / 100 +
                          y / 400 - 32045;
    return static_cast<double>(jdn) + (ut_hours - 12.0) / 24.0;
}

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

} // namespace

SolarPosition sun_position(const Site& site, const CivilTime& t) {
    site.validate();
    if (t.year < 1900 || t.year > 2100)
        throw DataError("timestamp year outside supported range 1900-2100: " +
                        std::to_string(t.year));
    if (t.month < 1 || t.month > 12 || t.day < 1 || t.day > 31)
        throw DataError("invalid civil date");

    const double jd = julian_day(t, site.timezone_hours);
    const double jc = (jd - 2451545.0) / 36525.0;

    const double L0 =
        std::fmod(280.46646 + jc * (36000.76983 + 0.0003032 * jc), 360.0);
    const double M = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
    const double e = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);
    const double Mr = deg2rad(M);
    const double C = std::sin(Mr) * (1.914602 - jc * (0.004817 + 0.000014 * jc)) +
                     std::sin(2 * Mr) * (0.019993 - 0.000101 * jc) +
                     std::sin(3 * Mr) * 0.000289;
    const double true_long = L0 + C;
    const double omega = deg2rad(125.04 - 1934.136 * jc);
    const double app_long = true_long - 0.00569 - 0.00478 * std::sin(omega);

    const double eps0 =
        23.0 +
        (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) /
            60.0;
    const double eps = deg2rad(eps0 + 0.00256 * std::cos(omega));

    const double lam = deg2rad(app_long);
    const double decl = std::asin(clamp_unit(std::sin(eps) * std::sin(lam)));

    const double vy = std::tan(eps / 2.0) * std::tan(eps / 2.0);
    const double L0r = deg2rad(L0);
    const double eqtime_min =
        4.0 * rad2deg(vy * std::sin(2 * L0r) - 2 * e * std::sin(Mr) +
                      4 * e * vy * std::sin(Mr) * std::cos(2 * L0r) -
                      0.5 * vy * vy * std::sin(4 * L0r) -
                      1.25 * e * e * std::sin(2 * Mr));

    const double local_min = t.hour * 60.0 + t.minute + t.second / 60.0;
    double tst = std::fmod(local_min + eqtime_min + 4.0 * site.longitude_deg -
                               60.0 * site.timezone_hours,
                           1440.0);
    if (tst < 0.0) tst += 1440.0;
    double ha = tst / 4.0 - 180.0;
    if (ha < -180.0) ha += 360.0;

    const double lat = deg2rad(site.latitude_deg);
    const double har = deg2rad(ha);
    const double cos_zen = clamp_unit(std::sin(lat) * std::sin(decl) +
                                      std::cos(lat) * std::cos(decl) * std::cos(har));
    const double zen = std::acos(cos_zen);
    const double altitude = 90.0 - rad2deg(zen);

    // Azimuth from north, clockwise, then converted to the south-referenced
    // east-positive convention.
    double az_north;
    const double sin_zen = std::sin(zen);
    if (sin_zen < 1e-9) {
        az_north = 180.0; // sun at zenith/nadir, azimuth undefined
    } else {
        const double cos_az = clamp_unit(
            (std::sin(lat) * cos_zen - std::sin(decl)) / (std::cos(lat) * sin_zen));
        const double az = rad2deg(std::acos(cos_az));
        az_north = (ha > 0.0) ? std::fmod(az + 180.0, 360.0)
                              : std::fmod(540.0 - az, 360.0);
    }
    return SolarPosition{wrap180(180.0 - az_north), altitude};
}

double incidence_cosine(const SolarPosition& sun, const PanelOrientation& panel) {
    const double beta = deg2rad(sun.altitude_deg);
    const double dphi = deg2rad(sun.azimuth_deg - panel.azimuth_deg);
    const double tilt = deg2rad(panel.tilt_deg);
    return std::cos(beta) * std::cos(dphi) * std::sin(tilt) +
           std::sin(beta) * std::cos(tilt);
}

TrackingResult sun_tracking_orientation(const SolarPosition& sun,
                                        const PanelLimits& limits,
                                        const PanelOrientation& park) {
    TrackingResult r;
    if (!sun.daylight()) {
        r.orientation = park;
        r.parked = true;
        return r;
    }
    bool clamped = false;
    r.orientation.tilt_deg = limits.tilt.clamp(90.0 - sun.altitude_deg, &clamped);
    r.orientation.azimuth_deg = limits.azimuth.clamp(sun.azimuth_deg, &clamped);
    r.clamped = clamped;
    return r;
}

} // namespace agripv
