#pragma once

#include <vector>

#include "agripv/errors.hpp"

namespace agripv {

struct CropParams {
    double t_base = 0.0;   // degrees C, minimum growth temperature
    double t_opt = 0.0;    // degrees C, optimal growth temperature
    double phu = 0.0;      // potential heat units to maturity, degC-days
    double lai_max = 0.0;  // maximum leaf area index
    double ah1 = 0.0;      // leaf development curve parameter
    double ah2 = 0.0;      // leaf development curve parameter
    double be = 0.0;       // energy-to-biomass conversion factor
    double hi = 0.0;       // harvest index, (0, 1]

    void validate() const;
};

struct DailyClimate {
    double t_min = 0.0;
    double t_max = 0.0;
    double t_avg = 0.0; // soil surface proxy T_G
};

struct CropState {
    int day = 0;
    double hui = 0.0;
    double reg = 0.0;
    double huf = 0.0;
    double lai = 0.0;
    double biomass = 0.0; // t/ha
};

/// Daily thermal time above the base temperature, clamped at zero.
double heat_unit(const DailyClimate& climate, const CropParams& params);

/// Temperature stress in [0, 1]; zero below the base temperature or above
/// 1.5x the optimum.
double temperature_stress(const DailyClimate& climate, const CropParams& params);

/// Heat unit factor from the logistic leaf development curve.
double heat_unit_factor(double hui, const CropParams& params);

/// Advances heat units, stress, and leaf area by one day. Biomass is left
/// untouched; the leaf trajectory depends on temperature only.
CropState advance_phenology(const CropState& state, const DailyClimate& climate,
                            const CropParams& params);

/// Full daily update: phenology plus intercepted PAR and biomass accumulation.
/// Interception uses the previous day's LAI; `par_field_hourly` holds the
/// field-level PAR for each time step of the day (W/m^2).
CropState advance_day(const CropState& state, const DailyClimate& climate,
                      const std::vector<double>& par_field_hourly,
                      const CropParams& params, double dt_hours);

struct YieldResult {
    double yield_t_ha = 0.0;
    double ler_crop = 0.0;
};

YieldResult yield_and_ler(const CropState& final_state, const CropParams& params,
                          double y_crop_only);

} // namespace agripv
