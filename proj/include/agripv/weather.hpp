#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agripv/solar.hpp"

namespace agripv {

struct WeatherSample {
    CivilTime time;
    double dni = 0.0;         // W/m^2
    double dhi = 0.0;         // W/m^2
    double temperature = 0.0; // degrees C
};

/// Column names for NSRDB-style hourly CSV. `minute` may be empty when the
/// file has no minute column.
struct CsvSchema {
    std::string year = "Year";
    std::string month = "Month";
    std::string day = "Day";
    std::string hour = "Hour";
    std::string minute = "Minute";
    std::string dni = "DNI";
    std::string dhi = "DHI";
    std::string temperature = "Temperature";
};

/// Loads hourly weather samples. Rejects missing columns, gaps, duplicated or
/// non-monotonic timestamps, NaN values, and negative irradiance; errors name
/// the offending row.
std::vector<WeatherSample> load_weather_csv(const std::string& path,
                                            const CsvSchema& schema);

struct ClearSkyParams {
    double peak_dni = 850.0;       // W/m^2
    double peak_dhi = 120.0;       // W/m^2
    double temp_mean = 18.0;       // degrees C
    double temp_amplitude = 6.0;   // degrees C, daily sinusoid half-range
};

/// Deterministic clear-sky synthesis at hourly cadence starting at local
/// midnight of `start_day`. Irradiance is zero whenever the sun is below the
/// horizon.
std::vector<WeatherSample> synthesize_clear_sky(const Site& site,
                                                const CivilTime& start_day,
                                                int num_days,
                                                const ClearSkyParams& params);

struct ForecastConfig {
    double gamma = 0.8;            // AR(1) autocorrelation, [0, 1)
    double max_std_fraction = 0.1; // noise ceiling as a fraction of each range
    double cap_lead_hours = 336.0; // std plateaus beyond this lead

    void validate() const;
};

/// Noise std at a given lead: max_std * min(sqrt(lead / cap_lead), 1).
double forecast_noise_std(double lead_hours, double max_std,
                          double cap_lead_hours);

struct SeriesRanges {
    double dni = 0.0;
    double dhi = 0.0;
    double temperature = 0.0;
};

/// max - min of each variable over the series; the "expected range" used to
/// scale the noise ceiling.
SeriesRanges expected_ranges(const std::vector<WeatherSample>& truth);

struct ForecastTrajectory {
    std::size_t issued_at = 0;
    // samples[i] is the forecast for absolute time index issued_at + i;
    // samples[0] equals the truth at issue time.
    std::vector<WeatherSample> samples;
};

/// AR(1) forecast for t0..end of series. `night[t]` marks sun-below-horizon
/// hours whose irradiance is forced to zero. Reproducible given the seed;
/// DNI/DHI are clamped nonnegative, temperature is never clamped.
ForecastTrajectory make_forecast(const std::vector<WeatherSample>& truth,
                                 const std::vector<bool>& night,
                                 std::size_t t0, const ForecastConfig& cfg,
                                 std::uint64_t seed);

} // namespace agripv
