#include "agripv/mpc.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace agripv {

void ScenarioConfig::validate() const {
    site.validate();
    layout.validate();
    pv.validate();
    crop.validate();
    forecast.validate();
    if (days < 1) throw ConfigError("scenario: days must be >= 1");
    if (dt_hours != 1.0)
        throw ConfigError("scenario: only hourly cadence (dt = 1 h) is supported");
    if (omega < 0.0 || omega > 1.0)
        throw ConfigError("scenario: omega must be in [0, 1]");
    if (!synthetic.has_value() && !csv.has_value())
        throw ConfigError("scenario: a weather source (synthetic or csv) is required");
    if (synthetic.has_value() && csv.has_value())
        throw ConfigError("scenario: choose exactly one weather source");
    if (!limits.tilt.contains(park.tilt_deg) ||
        !limits.azimuth.contains(park.azimuth_deg))
        throw ConfigError("scenario: park orientation outside panel limits");
}

DailyClimate day_climate(std::span<const WeatherSample> weather, int day,
                         int steps_per_day) {
    DailyClimate c;
    const std::size_t base = static_cast<std::size_t>(day) * steps_per_day;
    double tmin = weather[base].temperature;
    double tmax = tmin, tsum = 0.0;
    for (int h = 0; h < steps_per_day; ++h) {
        const double temp = weather[base + static_cast<std::size_t>(h)].temperature;
        tmin = std::min(tmin, temp);
        tmax = std::max(tmax, temp);
        tsum += temp;
    }
    c.t_min = tmin;
    c.t_max = tmax;
    c.t_avg = tsum / steps_per_day;
    return c;
}

HorizonInputs SeasonContext::horizon_inputs(
    const ScenarioConfig& cfg, const std::vector<WeatherSample>& weather) const {
    HorizonInputs in;
    in.weather = weather;
    in.sun = sun;
    in.tracking = tracking;
    in.fits = fits;
    in.pv = &cfg.pv;
    in.crop = &cfg.crop;
    in.dt_hours = cfg.dt_hours;
    in.steps_per_day = cfg.steps_per_day();
    in.y_crop = y_crop_only;
    in.revenue_st = revenue_st;
    in.tilt_limits = cfg.limits.tilt;
    return in;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

SeasonContext prepare_season(const ScenarioConfig& cfg, int jobs) {
    cfg.validate();
    SeasonContext ctx;
    if (cfg.synthetic) {
        ctx.truth = synthesize_clear_sky(cfg.site, cfg.synthetic->start_day,
                                         cfg.days, cfg.synthetic->clear_sky);
    } else {
        ctx.truth = load_weather_csv(cfg.csv->path, cfg.csv->schema);
    }
    const std::size_t total = static_cast<std::size_t>(cfg.horizon_steps());
    if (ctx.truth.size() != total)
        throw DataError("weather series has " + std::to_string(ctx.truth.size()) +
                        " samples, scenario expects " + std::to_string(total));

    ctx.sun.reserve(total);
    ctx.tracking.reserve(total);
    ctx.night.reserve(total);
    for (auto& wx : ctx.truth) {
        const SolarPosition sun = sun_position(cfg.site, wx.time);
        ctx.sun.push_back(sun);
        ctx.tracking.push_back(sun_tracking_orientation(sun, cfg.limits, cfg.park));
        ctx.night.push_back(!sun.daylight());
        if (!sun.daylight()) {
            // No direct beam or diffuse light without the sun above the horizon.
            wx.dni = 0.0;
            wx.dhi = 0.0;
        }
    }

    ctx.fits = fit_season(cfg.layout, ctx.sun, ctx.tracking, cfg.limits.tilt, jobs);

    // Sun-tracking baseline.
    ctx.tracking_power_w.resize(total);
    for (std::size_t t = 0; t < total; ++t) {
        const Irradiance irr = panel_irradiance(ctx.truth[t], ctx.sun[t],
                                                ctx.tracking[t].orientation);
        ctx.tracking_power_w[t] = power(cfg.pv, irr.i_db, irr.i_diff);
    }
    ctx.revenue_st = revenue(ctx.tracking_power_w, cfg.pv, cfg.dt_hours,
                             ctx.truth[0].time.hour);

    // Crop-only baseline: no panels, full field PAR.
    const int spd = cfg.steps_per_day();
    CropState state;
    for (int d = 0; d < cfg.days; ++d) {
        std::vector<double> par(static_cast<std::size_t>(spd));
        for (int h = 0; h < spd; ++h) {
            const auto& wx = ctx.truth[static_cast<std::size_t>(d) * spd + h];
            par[static_cast<std::size_t>(h)] = cfg.pv.alpha * (wx.dni + wx.dhi);
        }
        state = advance_day(state, day_climate(ctx.truth, d, spd), par, cfg.crop,
                            cfg.dt_hours);
        ctx.crop_only_daily.push_back(state);
    }
    ctx.y_crop_only = cfg.crop.hi * state.biomass;
    if (ctx.y_crop_only <= 0.0)
        throw NumericalError("crop-only baseline yield is zero; check crop and weather parameters");
    if (ctx.revenue_st <= 0.0)
        throw NumericalError("sun-tracking baseline revenue is zero; check prices and weather");
    return ctx;
}

Baselines run_baselines(const SeasonContext& ctx) {
    return Baselines{ctx.y_crop_only, ctx.revenue_st};
}

namespace {

struct SeasonSim {
    const ScenarioConfig& cfg;
    const SeasonContext& ctx;
    SeasonResult res;
    CropState state;
    std::vector<double> par_day;
    double par_today_wh = 0.0; // sum of field PAR * dt for the current day
    double realized_revenue = 0.0;

    SeasonSim(const ScenarioConfig& c, const SeasonContext& x, double omega)
        : cfg(c), ctx(x) {
        res.omega = omega;
        const std::size_t total = ctx.truth.size();
        res.power_w.resize(total, 0.0);
        res.par_field.resize(total, 0.0);
        res.steps.resize(total);
        par_day.reserve(static_cast<std::size_t>(cfg.steps_per_day()));
    }

    void apply(std::size_t t, const AppliedStep& step) {
        const auto& wx = ctx.truth[t];
        const Irradiance irr =
            panel_irradiance(wx, ctx.sun[t], step.orientation);
        const double p = power(cfg.pv, irr.i_db, irr.i_diff);
        res.power_w[t] = p;
        double par = 0.0;
        if (ctx.sun[t].daylight() && wx.dni + wx.dhi > 0.0) {
            const double s_f =
                shading_factor(cfg.layout, ctx.sun[t], step.orientation);
            par = par_field_exact(s_f, cfg.pv.alpha * wx.dni,
                                  cfg.pv.alpha * wx.dhi);
        }
        res.par_field[t] = par;
        res.steps[t] = step;
        par_day.push_back(par);
        par_today_wh += par * cfg.dt_hours;
        realized_revenue +=
            cfg.pv.price_profile[static_cast<std::size_t>(wx.time.hour)] * p *
            cfg.dt_hours;
        if (static_cast<int>(par_day.size()) == cfg.steps_per_day()) {
            const int d = static_cast<int>(t) / cfg.steps_per_day();
            state = advance_day(state, day_climate(ctx.truth, d, cfg.steps_per_day()),
                                par_day, cfg.crop, cfg.dt_hours);
            res.daily.push_back(state);
            par_day.clear();
            par_today_wh = 0.0;
        }
    }

    void finalize(double predicted_ler_pv, double predicted_ler_crop) {
        res.yield_t_ha = cfg.crop.hi * state.biomass;
        res.revenue_usd = realized_revenue;
        res.ler_crop = res.yield_t_ha / ctx.y_crop_only;
        res.ler_pv = res.revenue_usd / ctx.revenue_st;
        res.ler_total = res.ler_crop + res.ler_pv;
        res.predicted_ler_pv = predicted_ler_pv;
        res.predicted_ler_crop = predicted_ler_crop;
        const double pred_yield = predicted_ler_crop * ctx.y_crop_only;
        const double pred_rev = predicted_ler_pv * ctx.revenue_st;
        res.percent_error_yield =
            pred_yield != 0.0
                ? std::fabs(res.yield_t_ha - pred_yield) / std::fabs(pred_yield) * 100.0
                : 0.0;
        res.percent_error_revenue =
            pred_rev != 0.0
                ? std::fabs(res.revenue_usd - pred_rev) / std::fabs(pred_rev) * 100.0
                : 0.0;
        res.inexact_fraction =
            res.daylight_steps > 0
                ? static_cast<double>(res.inexact_steps) / res.daylight_steps
                : 0.0;
    }
};

AppliedStep make_applied(const SeasonContext& ctx, const ScenarioConfig& cfg,
                         std::size_t t, const StepDecision* dec) {
    AppliedStep step;
    step.t = static_cast<int>(t);
    if (!ctx.sun[t].daylight()) {
        step.orientation = cfg.park;
        step.parked = true;
        return step;
    }
    step.orientation = ctx.tracking[t].orientation;
    if (dec) {
        step.decision = *dec;
        const RecoveredTilt rt = recover_tilt(
            *dec, ctx.tracking[t].orientation.tilt_deg, cfg.limits.tilt);
        step.orientation.tilt_deg = rt.tilt_deg;
        step.delta_tilt_deg = rt.delta_deg;
        step.tilt_clamped = rt.clamped;
    }
    return step;
}

} // namespace

SeasonResult run_open_loop(const ScenarioConfig& cfg, const SeasonContext& ctx,
                           double omega, SolverBackend backend) {
    const HorizonInputs in = ctx.horizon_inputs(cfg, ctx.truth);
    const HorizonProblem problem =
        build_problem(in, 0, CropState{}, 0.0, 0.0, omega);
    const HorizonSolution sol = solve_horizon(problem, backend);

    std::vector<const StepDecision*> by_t(ctx.truth.size(), nullptr);
    for (const auto& dec : sol.plan)
        by_t[static_cast<std::size_t>(dec.t)] = &dec;

    SeasonSim sim(cfg, ctx, omega);
    for (std::size_t t = 0; t < ctx.truth.size(); ++t) {
        sim.apply(t, make_applied(ctx, cfg, t, by_t[t]));
        if (by_t[t]) {
            ++sim.res.daylight_steps;
            if (!by_t[t]->exact) ++sim.res.inexact_steps;
        }
    }
    sim.finalize(sol.predicted_ler_pv, sol.predicted_ler_crop);
    return sim.res;
}

SeasonResult run_mpc(const ScenarioConfig& cfg, const SeasonContext& ctx,
                     double omega, std::uint64_t seed, SolverBackend backend) {
    SeasonSim sim(cfg, ctx, omega);
    const std::size_t total = ctx.truth.size();
    std::vector<WeatherSample> combined = ctx.truth;
    bool have_prediction = false;
    double predicted_pv = 0.0, predicted_crop = 0.0;

    for (std::size_t t = 0; t < total; ++t) {
        const bool decision_step =
            ctx.sun[t].daylight() && ctx.truth[t].dni + ctx.truth[t].dhi > 0.0;
        const StepDecision* first = nullptr;
        StepDecision first_storage;
        if (decision_step || !cfg.solve_daylight_only) {
            const ForecastTrajectory traj = make_forecast(
                ctx.truth, ctx.night, t, cfg.forecast, splitmix64(seed ^ t));
            std::copy(traj.samples.begin(), traj.samples.end(),
                      combined.begin() + static_cast<long>(t));
            const HorizonInputs in = ctx.horizon_inputs(cfg, combined);
            const HorizonProblem problem = build_problem(
                in, t, sim.state, sim.par_today_wh, sim.realized_revenue, omega);
            const HorizonSolution sol = solve_horizon(problem, backend);
            if (!have_prediction) {
                predicted_pv = sol.predicted_ler_pv;
                predicted_crop = sol.predicted_ler_crop;
                have_prediction = true;
            }
            for (const auto& dec : sol.plan) {
                if (dec.t == static_cast<int>(t)) {
                    first_storage = dec;
                    first = &first_storage;
                    break;
                }
            }
        }
        sim.apply(t, make_applied(ctx, cfg, t, first));
        if (first) {
            ++sim.res.daylight_steps;
            if (!first->exact) ++sim.res.inexact_steps;
        }
    }
    sim.finalize(predicted_pv, predicted_crop);
    return sim.res;
}

std::vector<ParetoRow> sweep_pareto_serial(const ScenarioConfig& cfg,
                                           const SeasonContext& ctx,
                                           const std::vector<double>& omegas,
                                           SolverBackend backend) {
    std::vector<SeasonResult> results(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i)
        results[i] = run_open_loop(cfg, ctx, omegas[i], backend);

    std::vector<ParetoRow> rows(omegas.size());
    if (omegas.empty()) return rows;
    std::size_t i_lo = 0, i_hi = 0;
    for (std::size_t i = 1; i < omegas.size(); ++i) {
        if (omegas[i] < omegas[i_lo]) i_lo = i;
        if (omegas[i] > omegas[i_hi]) i_hi = i;
    }
    const double yield_anchor = results[i_lo].yield_t_ha;
    const double rev_anchor = results[i_hi].revenue_usd;
    const double pred_yield_anchor = results[i_lo].predicted_ler_crop;
    const double pred_rev_anchor = results[i_hi].predicted_ler_pv;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const SeasonResult& r = results[i];
        ParetoRow& row = rows[i];
        row.omega = omegas[i];
        row.yield_t_ha = r.yield_t_ha;
        row.revenue_usd = r.revenue_usd;
        row.norm_yield = yield_anchor > 0.0 ? r.yield_t_ha / yield_anchor : 0.0;
        row.norm_revenue = rev_anchor > 0.0 ? r.revenue_usd / rev_anchor : 0.0;
        row.pred_norm_yield = pred_yield_anchor > 0.0
                                  ? r.predicted_ler_crop / pred_yield_anchor
                                  : 0.0;
        row.pred_norm_revenue =
            pred_rev_anchor > 0.0 ? r.predicted_ler_pv / pred_rev_anchor : 0.0;
        row.ler_crop = r.ler_crop;
        row.ler_pv = r.ler_pv;
        row.ler_total = r.ler_total;
        row.inexact_fraction = r.inexact_fraction;
        row.percent_error_yield = r.percent_error_yield;
        row.percent_error_revenue = r.percent_error_revenue;
    }
    return rows;
}

std::vector<ParetoRow> sweep_pareto(const ScenarioConfig& cfg,
                                    const SeasonContext& ctx,
                                    const std::vector<double>& omegas,
                                    SolverBackend backend, int jobs) {
    std::vector<SeasonResult> results(omegas.size());
    const long n = static_cast<long>(omegas.size());
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < n; ++i)
        results[static_cast<std::size_t>(i)] =
            run_open_loop(cfg, ctx, omegas[static_cast<std::size_t>(i)], backend);

    // Reuse the serial normalization on the precomputed results.
    std::vector<ParetoRow> rows(omegas.size());
    if (omegas.empty()) return rows;
    std::size_t i_lo = 0, i_hi = 0;
    for (std::size_t i = 1; i < omegas.size(); ++i) {
        if (omegas[i] < omegas[i_lo]) i_lo = i;
        if (omegas[i] > omegas[i_hi]) i_hi = i;
    }
    const double yield_anchor = results[i_lo].yield_t_ha;
    const double rev_anchor = results[i_hi].revenue_usd;
    const double pred_yield_anchor = results[i_lo].predicted_ler_crop;
    const double pred_rev_anchor = results[i_hi].predicted_ler_pv;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const SeasonResult& r = results[i];
        ParetoRow& row = rows[i];
        row.omega = omegas[i];
        row.yield_t_ha = r.yield_t_ha;
        row.revenue_usd = r.revenue_usd;
        row.norm_yield = yield_anchor > 0.0 ? r.yield_t_ha / yield_anchor : 0.0;
        row.norm_revenue = rev_anchor > 0.0 ? r.revenue_usd / rev_anchor : 0.0;
        row.pred_norm_yield = pred_yield_anchor > 0.0
                                  ? r.predicted_ler_crop / pred_yield_anchor
                                  : 0.0;
        row.pred_norm_revenue =
            pred_rev_anchor > 0.0 ? r.predicted_ler_pv / pred_rev_anchor : 0.0;
        row.ler_crop = r.ler_crop;
        row.ler_pv = r.ler_pv;
        row.ler_total = r.ler_total;
        row.inexact_fraction = r.inexact_fraction;
        row.percent_error_yield = r.percent_error_yield;
        row.percent_error_revenue = r.percent_error_revenue;
    }
    return rows;
}

} // namespace agripv
