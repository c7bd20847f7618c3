#pragma once

#include <array>
#include <vector>

#include "agripv/solar.hpp"
#include "agripv/weather.hpp"

namespace agripv {

struct PvParams {
    double area_total_m2 = 0.0;          // A_array
    double efficiency = 0.0;             // eta_array, (0, 1]
    double alpha = 0.0;                  // PAR-irradiance ratio, (0, 1)
    std::array<double, 24> price_profile{}; // $/Wh by hour of day

    void validate() const;
};

struct PowerRecord {
    int t = 0;
    double i_db = 0.0;        // W/m^2
    double i_diff = 0.0;      // W/m^2
    double power_w = 0.0;     // W
    double delta_power_w = 0.0; // vs. sun tracking
};

/// Plane-of-array irradiance components. The direct beam term clamps the
/// incidence cosine at zero (sun behind panel yields no direct beam).
struct Irradiance {
    double i_db = 0.0;
    double i_diff = 0.0;
};
Irradiance panel_irradiance(const WeatherSample& wx, const SolarPosition& sun,
                            const PanelOrientation& panel);

double power(const PvParams& params, double i_db, double i_diff);

/// Sum of price * power * dt over the series; prices repeat daily from the
/// 24-value profile, `start_hour` is the hour of day of the first sample.
double revenue(const std::vector<double>& powers_w, const PvParams& params,
               double dt_hours, int start_hour = 0);

struct Deviations {
    double d_i_db = 0.0;
    double d_i_diff = 0.0;
    double d_power_w = 0.0;
};

/// Deviation quantities relative to sun tracking in the linearized
/// (x, y) = (cos, sin of tilt deviation) form.
Deviations deviations(const PvParams& params, const WeatherSample& wx,
                      const SolarPosition& sun, double x, double y);

/// revenue(P_st + dP) / revenue(P_st). Throws NumericalError when the
/// tracking revenue is zero.
double ler_pv(const std::vector<double>& delta_powers_w,
              const std::vector<double>& tracking_powers_w,
              const PvParams& params, double dt_hours, int start_hour = 0);

} // namespace agripv
