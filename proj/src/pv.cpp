#include "agripv/pv.hpp"

#include <algorithm>
#include <cmath>

namespace agripv {

void PvParams::validate() const {
    if (area_total_m2 <= 0.0) throw ConfigError("pv: array area must be positive");
    if (efficiency <= 0.0 || efficiency > 1.0)
        throw ConfigError("pv: efficiency must be in (0, 1]");
    if (alpha <= 0.0 || alpha >= 1.0)
        throw ConfigError("pv: alpha must be in (0, 1)");
    for (double p : price_profile)
        if (p < 0.0) throw ConfigError("pv: prices must be nonnegative");
}

Irradiance panel_irradiance(const WeatherSample& wx, const SolarPosition& sun,
                            const PanelOrientation& panel) {
    Irradiance irr;
    irr.i_db = wx.dni * std::max(0.0, incidence_cosine(sun, panel));
    irr.i_diff = wx.dhi * (1.0 + std::cos(deg2rad(panel.tilt_deg))) / 2.0;
    return irr;
}

double power(const PvParams& params, double i_db, double i_diff) {
    return params.area_total_m2 * params.efficiency * (i_db + i_diff);
}

double revenue(const std::vector<double>& powers_w, const PvParams& params,
               double dt_hours, int start_hour) {
    double total = 0.0;
    for (std::size_t t = 0; t < powers_w.size(); ++t) {
        const int hod = static_cast<int>((start_hour + t) % 24);
        total += params.price_profile[static_cast<std::size_t>(hod)] *
                 powers_w[t] * dt_hours;
    }
    return total;
}

Deviations deviations(const PvParams& params, const WeatherSample& wx,
                      const SolarPosition& sun, double x, double y) {
    Deviations d;
    const double b1 =
        0.5 * wx.dhi * std::cos(deg2rad(90.0 - sun.altitude_deg));
    const double b2 =
        -0.5 * wx.dhi * std::sin(deg2rad(90.0 - sun.altitude_deg));
    d.d_i_db = wx.dni * x - wx.dni;
    d.d_i_diff = b1 * x + b2 * y - b1;
    d.d_power_w = params.area_total_m2 * params.efficiency * (d.d_i_db + d.d_i_diff);
    return d;
}

double ler_pv(const std::vector<double>& delta_powers_w,
              const std::vector<double>& tracking_powers_w,
              const PvParams& params, double dt_hours, int start_hour) {
    if (delta_powers_w.size() != tracking_powers_w.size())
        throw DataError("ler_pv: series length mismatch");
    const double base = revenue(tracking_powers_w, params, dt_hours, start_hour);
    if (base <= 0.0)
        throw NumericalError("ler_pv: tracking revenue is zero, LER undefined");
    std::vector<double> adjusted(tracking_powers_w.size());
    for (std::size_t t = 0; t < adjusted.size(); ++t)
        adjusted[t] = tracking_powers_w[t] + delta_powers_w[t];
    return revenue(adjusted, params, dt_hours, start_hour) / base;
}

} // namespace agripv
