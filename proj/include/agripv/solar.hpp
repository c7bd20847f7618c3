#pragma once

#include <cmath>

#include "agripv/errors.hpp"

namespace agripv {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

/// Wraps an angle in degrees to (-180, 180].
double wrap180(double deg);

struct CivilTime {
    int year = 2000;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    double second = 0.0;
};

struct Site {
    double latitude_deg = 0.0;   // [-90, 90]
    double longitude_deg = 0.0;  // [-180, 180], east positive
    double timezone_hours = 0.0; // [-12, 14]

    void validate() const;
};

/// Sun direction angles. Azimuth is measured from true south, east of south
/// positive; altitude from the local horizon.
struct SolarPosition {
    double azimuth_deg = 0.0;
    double altitude_deg = 0.0;

    bool daylight() const { return altitude_deg > 0.0; }
};

/// Panel normal azimuth (south-referenced, east positive) and collector tilt
/// from horizontal.
struct PanelOrientation {
    double azimuth_deg = 0.0;
    double tilt_deg = 0.0;
};

struct AngleLimits {
    double lo_deg = 0.0;
    double hi_deg = 0.0;

    bool contains(double deg) const { return deg >= lo_deg && deg <= hi_deg; }
    double clamp(double deg, bool* clamped = nullptr) const;
};

struct PanelLimits {
    AngleLimits azimuth{-180.0, 180.0};
    AngleLimits tilt{0.0, 90.0};
};

/// Julian day for a civil timestamp with the given UTC offset.
double julian_day(const CivilTime& t, double timezone_hours);

/// Sun position from the NOAA general solar calculations (Meeus-derived
/// low-precision ephemeris, no refraction). Valid 1900-2100; outside that
/// range a DataError is thrown. Azimuth is returned south-referenced, east
/// positive.
SolarPosition sun_position(const Site& site, const CivilTime& t);

/// cos(theta) between the sun's rays and the panel normal.
double incidence_cosine(const SolarPosition& sun, const PanelOrientation& panel);

struct TrackingResult {
    PanelOrientation orientation;
    bool clamped = false; // tracking angles fell outside the physical limits
    bool parked = false;  // sun below horizon, park position returned
};

/// Sun-tracking orientation: tilt 90 - altitude, azimuth equal to the solar
/// azimuth, clamped into the panel limits. At night the park orientation is
/// returned with `parked` set.
TrackingResult sun_tracking_orientation(const SolarPosition& sun,
                                        const PanelLimits& limits,
                                        const PanelOrientation& park);

} // namespace agripv
