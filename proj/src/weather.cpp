#include "agripv/weather.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

namespace agripv {

namespace {

// Days since 1970-01-01 (Hinnant's civil calendar algorithm).
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, int& y, int& m, int& d) {
    z += 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long yy = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

long long epoch_hours(const CivilTime& t) {
    return days_from_civil(t.year, t.month, t.day) * 24 + t.hour;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
            field.pop_back();
        while (!field.empty() && field.front() == ' ') field.erase(field.begin());
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& s, std::size_t row, const std::string& col) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        if (std::isnan(v))
            throw DataError("NaN value in column '" + col + "' at row " +
                            std::to_string(row));
        return v;
    } catch (const DataError&) {
        throw;
    } catch (const std::exception&) {
        throw DataError("unparsable value '" + s + "' in column '" + col +
                        "' at row " + std::to_string(row));
    }
}

std::string time_str(const CivilTime& t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d", t.year, t.month,
                  t.day, t.hour, t.minute);
    return buf;
}

} // namespace

std::vector<WeatherSample> load_weather_csv(const std::string& path,
                                            const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open weather file: " + path);

    std::string header;
    if (!std::getline(in, header)) throw DataError("empty weather file: " + path);
    const auto cols = split_csv_line(header);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;

    auto col = [&](const std::string& name, bool required) -> long {
        auto it = index.find(name);
        if (it == index.end()) {
            if (required)
                throw DataError("missing required column '" + name + "' in " + path);
            return -1;
        }
        return static_cast<long>(it->second);
    };
    const long ci_year = col(schema.year, true);
    const long ci_month = col(schema.month, true);
    const long ci_day = col(schema.day, true);
    const long ci_hour = col(schema.hour, true);
    const long ci_minute = schema.minute.empty() ? -1 : col(schema.minute, false);
    const long ci_dni = col(schema.dni, true);
    const long ci_dhi = col(schema.dhi, true);
    const long ci_temp = col(schema.temperature, true);

    std::vector<WeatherSample> out;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line.find_first_not_of(" \r\t") == std::string::npos)
            continue;
        const auto f = split_csv_line(line);
        auto field = [&](long i) -> const std::string& {
            if (i < 0 || static_cast<std::size_t>(i) >= f.size())
                throw DataError("row " + std::to_string(row) + " has too few fields");
            return f[static_cast<std::size_t>(i)];
        };
        WeatherSample s;
        s.time.year = static_cast<int>(parse_number(field(ci_year), row, schema.year));
        s.time.month = static_cast<int>(parse_number(field(ci_month), row, schema.month));
        s.time.day = static_cast<int>(parse_number(field(ci_day), row, schema.day));
        s.time.hour = static_cast<int>(parse_number(field(ci_hour), row, schema.hour));
        s.time.minute = ci_minute >= 0
                            ? static_cast<int>(parse_number(field(ci_minute), row, schema.minute))
                            : 0;
        s.dni = parse_number(field(ci_dni), row, schema.dni);
        s.dhi = parse_number(field(ci_dhi), row, schema.dhi);
        s.temperature = parse_number(field(ci_temp), row, schema.temperature);

        if (s.dni < 0.0 || s.dhi < 0.0)
            throw DataError("negative irradiance at row " + std::to_string(row) +
                            " (" + time_str(s.time) + ")");
        if (!out.empty()) {
            const long long prev = epoch_hours(out.back().time);
            const long long cur = epoch_hours(s.time);
            if (cur == prev)
                throw DataError("duplicated hour at row " + std::to_string(row) +
                                " (" + time_str(s.time) + ")");
            if (cur < prev)
                throw DataError("non-monotonic timestamp at row " + std::to_string(row) +
                                " (" + time_str(s.time) + ")");
            if (cur != prev + 1)
                throw DataError("gap in hourly cadence before row " + std::to_string(row) +
                                " (" + time_str(s.time) + ")");
        }
        out.push_back(s);
    }
    if (out.empty()) throw DataError("no data rows in weather file: " + path);
    return out;
}

std::vector<WeatherSample> synthesize_clear_sky(const Site& site,
                                                const CivilTime& start_day,
                                                int num_days,
                                                const ClearSkyParams& params) {
    if (num_days < 1) throw ConfigError("synthesize_clear_sky: num_days must be >= 1");
    std::vector<WeatherSample> out;
    out.reserve(static_cast<std::size_t>(num_days) * 24);
    const long long day0 = days_from_civil(start_day.year, start_day.month, start_day.day);
    for (int d = 0; d < num_days; ++d) {
        CivilTime t;
        civil_from_days(day0 + d, t.year, t.month, t.day);
        for (int h = 0; h < 24; ++h) {
            t.hour = h;
            t.minute = 0;
            t.second = 0.0;
            WeatherSample s;
            s.time = t;
            const SolarPosition sun = sun_position(site, t);
            if (sun.daylight()) {
                const double sb = std::sin(deg2rad(sun.altitude_deg));
                s.dni = params.peak_dni * std::exp(-0.2 / std::max(sb, 1e-3));
                s.dhi = params.peak_dhi * std::sqrt(sb);
            }
            // Daily sinusoid, coolest near 03:00, warmest near 15:00.
            s.temperature = params.temp_mean -
                            params.temp_amplitude *
                                std::cos(2.0 * kPi * (h - 3.0) / 24.0);
            out.push_back(s);
        }
    }
    return out;
}

void ForecastConfig::validate() const {
    if (gamma < 0.0 || gamma >= 1.0)
        throw ConfigError("forecast gamma must be in [0, 1)");
    if (max_std_fraction < 0.0)
        throw ConfigError("forecast max_std_fraction must be >= 0");
    if (cap_lead_hours <= 0.0)
        throw ConfigError("forecast cap_lead_hours must be > 0");
}

double forecast_noise_std(double lead_hours, double max_std,
                          double cap_lead_hours) {
    if (lead_hours <= 0.0) return 0.0;
    return max_std * std::min(std::sqrt(lead_hours / cap_lead_hours), 1.0);
}

SeriesRanges expected_ranges(const std::vector<WeatherSample>& truth) {
    SeriesRanges r;
    if (truth.empty()) return r;
    double dni_lo = truth[0].dni, dni_hi = truth[0].dni;
    double dhi_lo = truth[0].dhi, dhi_hi = truth[0].dhi;
    double t_lo = truth[0].temperature, t_hi = truth[0].temperature;
    for (const auto& s : truth) {
        dni_lo = std::min(dni_lo, s.dni);
        dni_hi = std::max(dni_hi, s.dni);
        dhi_lo = std::min(dhi_lo, s.dhi);
        dhi_hi = std::max(dhi_hi, s.dhi);
        t_lo = std::min(t_lo, s.temperature);
        t_hi = std::max(t_hi, s.temperature);
    }
    r.dni = dni_hi - dni_lo;
    r.dhi = dhi_hi - dhi_lo;
    r.temperature = t_hi - t_lo;
    return r;
}

namespace {

// Deterministic standard normals via Box-Muller on mt19937_64 output.
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01_positive();
        const double u2 = uniform01_positive();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    double uniform01_positive() {
        // (0, 1]: 53-bit mantissa, shifted away from zero.
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace

ForecastTrajectory make_forecast(const std::vector<WeatherSample>& truth,
                                 const std::vector<bool>& night,
                                 std::size_t t0, const ForecastConfig& cfg,
                                 std::uint64_t seed) {
    cfg.validate();
    if (t0 >= truth.size())
        throw DataError("make_forecast: t0 out of range");
    if (night.size() != truth.size())
        throw DataError("make_forecast: night mask length mismatch");

    const SeriesRanges ranges = expected_ranges(truth);
    const double sd_dni = cfg.max_std_fraction * ranges.dni;
    const double sd_dhi = cfg.max_std_fraction * ranges.dhi;
    const double sd_temp = cfg.max_std_fraction * ranges.temperature;

    NormalStream z_dni(seed ^ 0x9e3779b97f4a7c15ull);
    NormalStream z_dhi(seed ^ 0xc2b2ae3d27d4eb4full);
    NormalStream z_temp(seed ^ 0x165667b19e3779f9ull);

    ForecastTrajectory traj;
    traj.issued_at = t0;
    traj.samples.reserve(truth.size() - t0);
    traj.samples.push_back(truth[t0]); // lead 0: the current measurement

    for (std::size_t t = t0 + 1; t < truth.size(); ++t) {
        const double lead = static_cast<double>(t - t0);
        const WeatherSample& prev_truth = truth[t - 1];
        const WeatherSample& prev_fc = traj.samples.back();

        WeatherSample f;
        f.time = truth[t].time;
        f.dni = truth[t].dni + cfg.gamma * (prev_truth.dni - prev_fc.dni) +
                forecast_noise_std(lead, sd_dni, cfg.cap_lead_hours) * z_dni.next();
        f.dhi = truth[t].dhi + cfg.gamma * (prev_truth.dhi - prev_fc.dhi) +
                forecast_noise_std(lead, sd_dhi, cfg.cap_lead_hours) * z_dhi.next();
        f.temperature =
            truth[t].temperature +
            cfg.gamma * (prev_truth.temperature - prev_fc.temperature) +
            forecast_noise_std(lead, sd_temp, cfg.cap_lead_hours) * z_temp.next();

        f.dni = std::max(0.0, f.dni);
        f.dhi = std::max(0.0, f.dhi);
        if (night[t]) {
            f.dni = 0.0;
            f.dhi = 0.0;
        }
        traj.samples.push_back(f);
    }
    return traj;
}

} // namespace agripv
