#include "agripv/crop.hpp"

#include <algorithm>
#include <cmath>

#include "agripv/solar.hpp"

namespace agripv {

void CropParams::validate() const {
    if (t_opt <= t_base) throw ConfigError("crop: t_opt must exceed t_base");
    if (phu <= 0.0) throw ConfigError("crop: phu must be positive");
    if (lai_max <= 0.0) throw ConfigError("crop: lai_max must be positive");
    if (hi <= 0.0 || hi > 1.0) throw ConfigError("crop: hi must be in (0, 1]");
    if (be <= 0.0) throw ConfigError("crop: be must be positive");
}

double heat_unit(const DailyClimate& climate, const CropParams& params) {
    return std::max(0.0, (climate.t_min + climate.t_max) / 2.0 - params.t_base);
}

double temperature_stress(const DailyClimate& climate, const CropParams& params) {
    const double tg = climate.t_avg;
    if (tg <= params.t_base) return 0.0;
    if (tg > 1.5 * params.t_opt) return 0.0; // growth halted
    const double frac = (tg - params.t_base) / (params.t_opt - params.t_base);
    return std::clamp(std::sin(kPi / 2.0 * frac), 0.0, 1.0);
}

double heat_unit_factor(double hui, const CropParams& params) {
    return hui / (hui + std::exp(params.ah1 - params.ah2 * hui));
}

CropState advance_phenology(const CropState& state, const DailyClimate& climate,
                            const CropParams& params) {
    CropState next = state;
    next.day = state.day + 1;
    next.hui = state.hui + heat_unit(climate, params) / params.phu;
    next.reg = temperature_stress(climate, params);
    next.huf = heat_unit_factor(next.hui, params);
    const double dlai = (next.huf - state.huf) * params.lai_max *
                        (1.0 - std::exp(5.0 * (state.lai - params.lai_max))) *
                        std::sqrt(next.reg);
    next.lai = state.lai + std::max(0.0, dlai);
    return next;
}

CropState advance_day(const CropState& state, const DailyClimate& climate,
                      const std::vector<double>& par_field_hourly,
                      const CropParams& params, double dt_hours) {
    CropState next = advance_phenology(state, climate, params);
    // Interception from the previous day's canopy (the value fed back to the
    // controller at the day boundary).
    const double intercept = 1.0 - std::exp(-0.65 * state.lai);
    double par_crop = 0.0; // Wh/m^2
    for (double par : par_field_hourly) par_crop += par * intercept * dt_hours;
    next.biomass = state.biomass + 0.001 * params.be * par_crop * next.reg;
    return next;
}

YieldResult yield_and_ler(const CropState& final_state, const CropParams& params,
                          double y_crop_only) {
    if (y_crop_only <= 0.0)
        throw NumericalError("yield_and_ler: crop-only baseline yield is zero");
    YieldResult r;
    r.yield_t_ha = params.hi * final_state.biomass;
    r.ler_crop = r.yield_t_ha / y_crop_only;
    return r;
}

} // namespace agripv
