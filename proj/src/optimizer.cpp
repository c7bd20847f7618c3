#include "agripv/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace agripv {

StepCoefficients make_step_coefficients(int t, double dni, double dhi,
                                        const SolarPosition& sun,
                                        const ShadingAffineFit& fit,
                                        double alpha) {
    StepCoefficients c;
    c.t = t;
    c.dni = dni;
    c.dhi = dhi;
    const double comp = deg2rad(90.0 - sun.altitude_deg);
    c.b1 = 0.5 * dhi * std::cos(comp);
    c.b2 = -0.5 * dhi * std::sin(comp);
    c.c1 = -fit.g1 * dni * alpha;
    c.c2 = alpha * (dni - fit.g2 * dni + dhi);
    c.d1 = std::sin(comp);
    c.d2 = std::cos(comp);
    return c;
}

namespace {

bool slab_feasible(double x, double y, double d1, double d2) {
    const double s = d1 * x + d2 * y;
    return s >= -1e-12 && s <= 1.0 + 1e-12;
}

void finish_decision(StepDecision& d) {
    d.exact = std::fabs(1.0 - (d.x * d.x + d.y * d.y)) <= kExactnessTol;
}

} // namespace

StepDecision solve_step(const StepCoefficients& coeff, double p, double q) {
    StepDecision dec;
    dec.t = coeff.t;
    const double norm = std::hypot(p, q);
    if (norm < 1e-30) {
        dec.x = 1.0;
        dec.y = 0.0;
        dec.degenerate = true;
        finish_decision(dec);
        return dec;
    }
    const double d1 = coeff.d1, d2 = coeff.d2;

    // Candidate extreme points: the disk-boundary gradient maximizer (when
    // slab-feasible) and the circle intersections of the two slab lines.
    double cx[4], cy[4];
    int n = 0;
    if (slab_feasible(p / norm, q / norm, d1, d2)) {
        cx[n] = p / norm;
        cy[n] = q / norm;
        ++n;
    }
    cx[n] = d1; cy[n] = d2; ++n;        // d1*x + d2*y = 1, tangent point
    cx[n] = -d2; cy[n] = d1; ++n;       // d1*x + d2*y = 0 endpoints
    cx[n] = d2; cy[n] = -d1; ++n;

    double best = -std::numeric_limits<double>::infinity();
    const double tie_tol = 1e-12 * norm;
    for (int i = 0; i < n; ++i) {
        const double obj = p * cx[i] + q * cy[i];
        if (obj > best + tie_tol ||
            (obj > best - tie_tol && cx[i] > dec.x)) {
            best = obj;
            dec.x = cx[i];
            dec.y = cy[i];
        }
    }
    finish_decision(dec);
    return dec;
}

StepDecision solve_step_barrier(const StepCoefficients& coeff, double p,
                                double q, double scale) {
    const double d1 = coeff.d1, d2 = coeff.d2;
    const double s_eff = std::max(scale, 1e-12);
    double x = 0.45 * d1, y = 0.45 * d2;

    for (double mu = 0.1 * s_eff; mu >= 1e-12 * s_eff; mu *= 0.15) {
        for (int iter = 0; iter < 50; ++iter) {
            const double g0 = 1.0 - x * x - y * y;
            const double s = d1 * x + d2 * y;
            const double gx = p - 2.0 * mu * x / g0 + mu * d1 / s - mu * d1 / (1.0 - s);
            const double gy = q - 2.0 * mu * y / g0 + mu * d2 / s - mu * d2 / (1.0 - s);
            // Negative-definite Hessian of the barrier objective.
            const double a0 = -2.0 * mu / g0;
            const double hxx = a0 - 4.0 * mu * x * x / (g0 * g0) -
                               mu * d1 * d1 * (1.0 / (s * s) + 1.0 / ((1 - s) * (1 - s)));
            const double hyy = a0 - 4.0 * mu * y * y / (g0 * g0) -
                               mu * d2 * d2 * (1.0 / (s * s) + 1.0 / ((1 - s) * (1 - s)));
            const double hxy = -4.0 * mu * x * y / (g0 * g0) -
                               mu * d1 * d2 * (1.0 / (s * s) + 1.0 / ((1 - s) * (1 - s)));
            const double det = hxx * hyy - hxy * hxy;
            if (std::fabs(det) < 1e-300) break;
            double dx = -(hyy * gx - hxy * gy) / det;
            double dy = -(-hxy * gx + hxx * gy) / det;

            double step = 1.0;
            const double f0 = p * x + q * y +
                              mu * (std::log(g0) + std::log(s) + std::log(1.0 - s));
            double nx = x, ny = y;
            bool moved = false;
            for (int bt = 0; bt < 60; ++bt) {
                const double tx = x + step * dx, ty = y + step * dy;
                const double tg0 = 1.0 - tx * tx - ty * ty;
                const double ts = d1 * tx + d2 * ty;
                if (tg0 > 0.0 && ts > 0.0 && ts < 1.0) {
                    const double f = p * tx + q * ty +
                                     mu * (std::log(tg0) + std::log(ts) +
                                           std::log(1.0 - ts));
                    if (f >= f0) {
                        nx = tx;
                        ny = ty;
                        moved = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!moved) break;
            const double shift = std::hypot(nx - x, ny - y);
            x = nx;
            y = ny;
            if (shift < 1e-14) break;
        }
    }
    StepDecision dec;
    dec.t = coeff.t;
    dec.x = x;
    dec.y = y;
    dec.degenerate = std::hypot(p, q) < 1e-30;
    finish_decision(dec);
    return dec;
}

HorizonProblem build_problem(const HorizonInputs& in, std::size_t t0,
                             const CropState& state, double par_today_realized,
                             double realized_revenue, double omega) {
    const std::size_t total = in.weather.size();
    if (t0 > total) throw DataError("build_problem: t0 out of range");
    if (in.sun.size() != total || in.tracking.size() != total ||
        in.fits.size() != total)
        throw DataError("build_problem: season context length mismatch");
    if (omega < 0.0 || omega > 1.0)
        throw ConfigError("build_problem: omega must be in [0, 1]");
    if (in.revenue_st <= 0.0 || in.y_crop <= 0.0)
        throw NumericalError("build_problem: baselines must be positive");

    const int spd = in.steps_per_day;
    const int num_days = static_cast<int>(total) / spd;
    const int first_day = static_cast<int>(t0) / spd;

    HorizonProblem prob;
    prob.omega = omega;
    prob.pv_accrued = realized_revenue / in.revenue_st;
    prob.crop_accrued = state.biomass;
    prob.par_today_realized = par_today_realized;
    prob.first_day = first_day;
    prob.y_crop = in.y_crop;
    prob.revenue_st = in.revenue_st;
    prob.dt_hours = in.dt_hours;
    prob.crop = in.crop;
    prob.pv = in.pv;
    prob.tilt_limits = in.tilt_limits;
    prob.day_reg.assign(static_cast<std::size_t>(num_days), 0.0);
    prob.day_intercept.assign(static_cast<std::size_t>(num_days), 0.0);

    // Exogenous leaf/stress schedule from the temperatures in use. The leaf
    // trajectory does not depend on panel decisions, only on temperature.
    CropState sched = state;
    for (int d = first_day; d < num_days; ++d) {
        DailyClimate climate;
        double tmin = in.weather[static_cast<std::size_t>(d) * spd].temperature;
        double tmax = tmin, tsum = 0.0;
        for (int h = 0; h < spd; ++h) {
            const double temp =
                in.weather[static_cast<std::size_t>(d) * spd + h].temperature;
            tmin = std::min(tmin, temp);
            tmax = std::max(tmax, temp);
            tsum += temp;
        }
        climate.t_min = tmin;
        climate.t_max = tmax;
        climate.t_avg = tsum / spd;
        const double lai_prev = sched.lai;
        sched = advance_phenology(sched, climate, *in.crop);
        prob.day_reg[static_cast<std::size_t>(d)] = sched.reg;
        prob.day_intercept[static_cast<std::size_t>(d)] =
            1.0 - std::exp(-0.65 * lai_prev);
    }

    const double rev_scale =
        in.dt_hours * in.pv->area_total_m2 * in.pv->efficiency / in.revenue_st;
    for (std::size_t t = t0; t < total; ++t) {
        const WeatherSample& wx = in.weather[t];
        if (!in.sun[t].daylight() || wx.dni + wx.dhi <= 0.0) continue;
        if (!in.fits[t].valid)
            throw NumericalError("build_problem: missing shading fit for daylight step " +
                                 std::to_string(t));
        HorizonStep hs;
        hs.coeff = make_step_coefficients(static_cast<int>(t), wx.dni, wx.dhi,
                                          in.sun[t], in.fits[t], in.pv->alpha);
        hs.day = static_cast<int>(t) / spd;
        hs.track_tilt_deg = in.tracking[t].orientation.tilt_deg;
        const int hod = wx.time.hour;
        hs.rev_weight =
            in.pv->price_profile[static_cast<std::size_t>(hod)] * rev_scale;
        hs.crop_weight = 0.001 * in.crop->be *
                         prob.day_reg[static_cast<std::size_t>(hs.day)] *
                         prob.day_intercept[static_cast<std::size_t>(hs.day)] *
                         in.dt_hours * in.crop->hi / in.y_crop;
        hs.p = omega * hs.rev_weight * (hs.coeff.dni + hs.coeff.b1) +
               (1.0 - omega) * hs.crop_weight * hs.coeff.c1;
        hs.q = omega * hs.rev_weight * hs.coeff.b2;
        prob.steps.push_back(hs);
    }
    return prob;
}

HorizonSolution solve_horizon(const HorizonProblem& problem,
                              SolverBackend backend) {
    HorizonSolution sol;
    sol.plan.reserve(problem.steps.size());

    double scale = 0.0;
    for (const auto& hs : problem.steps)
        scale = std::max(scale, std::hypot(hs.p, hs.q));

    double ler_pv = problem.pv_accrued;
    std::vector<double> day_par(problem.day_reg.size(), 0.0);
    if (problem.first_day < static_cast<int>(day_par.size()))
        day_par[static_cast<std::size_t>(problem.first_day)] =
            problem.par_today_realized;

    for (const auto& hs : problem.steps) {
        StepDecision dec =
            backend == SolverBackend::Analytic
                ? solve_step(hs.coeff, hs.p, hs.q)
                : solve_step_barrier(hs.coeff, hs.p, hs.q, scale);
        if (dec.exact) {
            // The recovery of an on-circle solution is deterministic, so the
            // plan and its prediction use the executed (possibly clamped)
            // deviation. Interior solutions keep the raw solver point: their
            // recovery ambiguity is exactly what the prediction error should
            // surface.
            const RecoveredTilt rt =
                recover_tilt(dec, hs.track_tilt_deg, problem.tilt_limits);
            dec.delta_tilt_deg = rt.delta_deg;
            dec.tilt_clamped = rt.clamped;
            if (rt.clamped) {
                const double delta_eff =
                    deg2rad(rt.tilt_deg - hs.track_tilt_deg);
                dec.x = std::cos(delta_eff);
                dec.y = std::sin(delta_eff);
                dec.delta_tilt_deg = rt.tilt_deg - hs.track_tilt_deg;
            }
        }
        ler_pv += hs.rev_weight * (hs.coeff.dni * dec.x + hs.coeff.b1 * dec.x +
                                   hs.coeff.b2 * dec.y + hs.coeff.dhi / 2.0);
        day_par[static_cast<std::size_t>(hs.day)] +=
            (hs.coeff.c1 * dec.x + hs.coeff.c2) * problem.dt_hours;
        sol.plan.push_back(dec);
    }

    double biomass = problem.crop_accrued;
    for (std::size_t d = static_cast<std::size_t>(problem.first_day);
         d < day_par.size(); ++d) {
        biomass += 0.001 * problem.crop->be * problem.day_reg[d] *
                   problem.day_intercept[d] * day_par[d];
    }
    sol.predicted_ler_pv = ler_pv;
    sol.predicted_ler_crop = problem.crop->hi * biomass / problem.y_crop;
    return sol;
}

RecoveredTilt recover_tilt(const StepDecision& decision, double tracking_tilt_deg,
                           const AngleLimits& tilt_limits) {
    const double x = std::clamp(decision.x, -1.0, 1.0);
    const double y = std::clamp(decision.y, -1.0, 1.0);
    double delta;
    if (decision.exact) {
        delta = rad2deg(std::atan2(y, x));
    } else {
        const double sign_a = (y > 0.0) ? 1.0 : -1.0; // y = 0 falls toward flat
        const double cand_a = sign_a * rad2deg(std::acos(x));
        const double cand_b = rad2deg(std::asin(y));
        delta = std::fabs(cand_a) >= std::fabs(cand_b) ? cand_a : cand_b;
    }
    RecoveredTilt r;
    r.delta_deg = delta;
    bool clamped = false;
    r.tilt_deg = tilt_limits.clamp(tracking_tilt_deg + delta, &clamped);
    r.clamped = clamped;
    return r;
}

} // namespace agripv
