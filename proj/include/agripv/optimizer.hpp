#pragma once

#include <span>
#include <vector>

#include "agripv/crop.hpp"
#include "agripv/pv.hpp"
#include "agripv/shading.hpp"
#include "agripv/solar.hpp"
#include "agripv/weather.hpp"

namespace agripv {

/// Per-step data of the linearized problem. d1, d2 are sin/cos of
/// (90 deg - solar altitude) and satisfy d1^2 + d2^2 = 1.
struct StepCoefficients {
    int t = 0;
    double b1 = 0.0, b2 = 0.0; // diffuse deviation coefficients, W/m^2
    double c1 = 0.0, c2 = 0.0; // field PAR coefficients, W/m^2
    double d1 = 0.0, d2 = 0.0; // tilt-limit slab coefficients
    double dni = 0.0, dhi = 0.0;
};

inline constexpr double kExactnessTol = 1e-6; // on 1 - (x^2 + y^2)

struct StepDecision {
    int t = 0;
    double x = 1.0, y = 0.0;
    bool exact = true;       // x^2 + y^2 = 1 within kExactnessTol
    bool degenerate = false; // zero objective gradient, sun tracking returned
    double delta_tilt_deg = 0.0;
    bool tilt_clamped = false;
};

StepCoefficients make_step_coefficients(int t, double dni, double dhi,
                                        const SolarPosition& sun,
                                        const ShadingAffineFit& fit,
                                        double alpha);

enum class SolverBackend {
    Analytic, // exact per-step candidate enumeration (default)
    Barrier,  // generic log-barrier interior-point path, for cross-validation
};

/// Maximizes p*x + q*y subject to x^2 + y^2 <= 1 and 0 <= d1*x + d2*y <= 1 by
/// enumerating the finite candidate set; ties break toward larger x. With
/// p = q = 0 returns (1, 0) and sets `degenerate`.
StepDecision solve_step(const StepCoefficients& coeff, double p, double q);

/// Same problem via a damped-Newton log-barrier method. `scale` sets the
/// final barrier weight; pass the largest objective gradient norm over the
/// horizon so that near-degenerate steps remain interior (inexact).
StepDecision solve_step_barrier(const StepCoefficients& coeff, double p,
                                double q, double scale);

struct HorizonStep {
    StepCoefficients coeff;
    double rev_weight = 0.0;  // price * dt * A * eta / tracking revenue
    double crop_weight = 0.0; // 0.001 * BE * REG * interception * dt * HI / Y_crop
    double p = 0.0, q = 0.0;  // assembled objective coefficients
    int day = 0;
    double track_tilt_deg = 0.0; // sun-tracking tilt, recovery reference
};

struct HorizonProblem {
    double omega = 0.5;
    std::vector<HorizonStep> steps; // future daylight steps only, time order
    double pv_accrued = 0.0;        // realized revenue so far / tracking revenue
    double crop_accrued = 0.0;      // realized biomass so far, t/ha
    // Field PAR already received during the current (partial) day, Wh/m^2.
    double par_today_realized = 0.0;
    std::vector<double> day_reg;       // REG schedule for days 0..D-1
    std::vector<double> day_intercept; // interception fraction per day
    int first_day = 0;                 // day index of t0
    double y_crop = 0.0;
    double revenue_st = 0.0;
    double dt_hours = 1.0;
    const CropParams* crop = nullptr;
    const PvParams* pv = nullptr;
    AngleLimits tilt_limits{0.0, 90.0};
};

/// Exogenous season context for building horizons; weather entries before t0
/// are realized measurements, entries from t0 on are the forecast in use.
struct HorizonInputs {
    std::span<const WeatherSample> weather;
    std::span<const SolarPosition> sun;
    std::span<const TrackingResult> tracking;
    std::span<const ShadingAffineFit> fits;
    const PvParams* pv = nullptr;
    const CropParams* crop = nullptr;
    double dt_hours = 1.0;
    int steps_per_day = 24;
    double y_crop = 0.0;
    double revenue_st = 0.0;
    AngleLimits tilt_limits{0.0, 90.0};
};

/// Builds the remaining-horizon problem from time t0 with the crop state at
/// the end of the previous day. The REG/LAI day schedule is precomputed from
/// the (forecast) temperatures; it does not depend on the decisions.
HorizonProblem build_problem(const HorizonInputs& in, std::size_t t0,
                             const CropState& state, double par_today_realized,
                             double realized_revenue, double omega);

struct HorizonSolution {
    std::vector<StepDecision> plan; // one entry per daylight step
    double predicted_ler_pv = 0.0;
    double predicted_ler_crop = 0.0;
};

HorizonSolution solve_horizon(const HorizonProblem& problem,
                              SolverBackend backend = SolverBackend::Analytic);

struct RecoveredTilt {
    double delta_deg = 0.0;
    double tilt_deg = 0.0;
    bool clamped = false;
};

/// Tilt recovery: atan2(y, x) for on-circle solutions (exact for any point of
/// the circle); for inexact ones the larger-magnitude candidate of
/// sign(y)*acos(x) and asin(y). The absolute tilt is then clamped into the
/// physical limits.
RecoveredTilt recover_tilt(const StepDecision& decision, double tracking_tilt_deg,
                           const AngleLimits& tilt_limits);

} // namespace agripv
