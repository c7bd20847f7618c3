#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agripv/crop.hpp"
#include "agripv/optimizer.hpp"
#include "agripv/pv.hpp"
#include "agripv/shading.hpp"
#include "agripv/solar.hpp"
#include "agripv/weather.hpp"

namespace agripv {

struct SyntheticWeatherConfig {
    CivilTime start_day;
    ClearSkyParams clear_sky;
};

struct CsvWeatherConfig {
    std::string path;
    CsvSchema schema;
};

struct ScenarioConfig {
    Site site;
    ArrayLayout layout;
    PvParams pv;
    CropParams crop;
    PanelLimits limits;
    PanelOrientation park;
    int days = 0;
    double dt_hours = 1.0;
    double omega = 0.5;
    ForecastConfig forecast;
    std::uint64_t seed = 0;
    bool solve_daylight_only = true;
    std::optional<SyntheticWeatherConfig> synthetic;
    std::optional<CsvWeatherConfig> csv;

    int steps_per_day() const { return static_cast<int>(24.0 / dt_hours + 0.5); }
    int horizon_steps() const { return days * steps_per_day(); }
    void validate() const;
};

/// Min/max/mean temperature of one simulated day.
DailyClimate day_climate(std::span<const WeatherSample> weather, int day,
                         int steps_per_day);

/// Precomputed exogenous season data: truth weather, sun positions, tracking
/// trajectory, shading fits, and the two single-use baselines.
struct SeasonContext {
    std::vector<WeatherSample> truth;
    std::vector<SolarPosition> sun;
    std::vector<TrackingResult> tracking;
    std::vector<ShadingAffineFit> fits;
    std::vector<bool> night;
    std::vector<double> tracking_power_w;
    double y_crop_only = 0.0;   // t/ha, unshaded season
    double revenue_st = 0.0;    // $, pure sun-tracking season
    std::vector<CropState> crop_only_daily;

    HorizonInputs horizon_inputs(const ScenarioConfig& cfg,
                                 const std::vector<WeatherSample>& weather) const;
};

/// Builds the season context; fits run in parallel when jobs != 1.
SeasonContext prepare_season(const ScenarioConfig& cfg, int jobs = 0);

struct AppliedStep {
    int t = 0;
    PanelOrientation orientation;
    bool parked = false;
    StepDecision decision;   // meaningful only when !parked
    double delta_tilt_deg = 0.0;
    bool tilt_clamped = false;
};

struct SeasonResult {
    double omega = 0.0;
    std::vector<double> power_w;
    std::vector<double> par_field;
    std::vector<CropState> daily;
    std::vector<AppliedStep> steps;
    double yield_t_ha = 0.0;
    double revenue_usd = 0.0;
    double ler_crop = 0.0;
    double ler_pv = 0.0;
    double ler_total = 0.0;
    double predicted_ler_crop = 0.0;
    double predicted_ler_pv = 0.0;
    double percent_error_yield = 0.0;   // |realized - predicted| / predicted * 100
    double percent_error_revenue = 0.0;
    std::size_t daylight_steps = 0;
    std::size_t inexact_steps = 0;
    double inexact_fraction = 0.0;
};

/// Crop-only yield and sun-tracking revenue (already part of the context);
/// returned here for reporting.
struct Baselines {
    double y_crop_only = 0.0;
    double revenue_tracking = 0.0;
};
Baselines run_baselines(const SeasonContext& ctx);

/// Solves the full season once with the true weather and pushes the recovered
/// tilts through the exact nonlinear models.
SeasonResult run_open_loop(const ScenarioConfig& cfg, const SeasonContext& ctx,
                           double omega,
                           SolverBackend backend = SolverBackend::Analytic);

/// Closed loop: at each step issue a forecast, re-solve the remaining
/// horizon, apply only the first decision, and advance the crop with realized
/// values at each day boundary.
SeasonResult run_mpc(const ScenarioConfig& cfg, const SeasonContext& ctx,
                     double omega, std::uint64_t seed,
                     SolverBackend backend = SolverBackend::Analytic);

struct ParetoRow {
    double omega = 0.0;
    double yield_t_ha = 0.0;
    double revenue_usd = 0.0;
    double norm_yield = 0.0;
    double norm_revenue = 0.0;
    double pred_norm_yield = 0.0;
    double pred_norm_revenue = 0.0;
    double ler_crop = 0.0;
    double ler_pv = 0.0;
    double ler_total = 0.0;
    double inexact_fraction = 0.0;
    double percent_error_yield = 0.0;
    double percent_error_revenue = 0.0;
};

/// Open-loop run per omega (parallel across omegas); yield is normalized by
/// the smallest-omega run and revenue by the largest-omega run.
std::vector<ParetoRow> sweep_pareto(const ScenarioConfig& cfg,
                                    const SeasonContext& ctx,
                                    const std::vector<double>& omegas,
                                    SolverBackend backend = SolverBackend::Analytic,
                                    int jobs = 0);

std::vector<ParetoRow> sweep_pareto_serial(const ScenarioConfig& cfg,
                                           const SeasonContext& ctx,
                                           const std::vector<double>& omegas,
                                           SolverBackend backend = SolverBackend::Analytic);

} // namespace agripv
