#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "agripv/crop.hpp"
#include "agripv/solar.hpp"

using namespace agripv;

namespace {

const CropParams kParams{4.0, 16.0, 400.0, 4.0, 5.0, 15.0, 30.0, 0.95};

// Straight-line re-derivation of the daily growth chain, written without
// looking at the library code: heat units, stress, logistic leaf curve, PAR
// interception from yesterday's canopy, and biomass accumulation.
struct OracleState {
    double hui = 0.0, huf = 0.0, lai = 0.0, biomass = 0.0, reg = 0.0;
};

OracleState oracle_day(const OracleState& s, double tmin, double tmax,
                       double tavg, const std::vector<double>& par_hourly,
                       const CropParams& cp, double dt) {
    OracleState n = s;
    const double hu = std::max(0.0, 0.5 * (tmin + tmax) - cp.t_base);
    n.hui = s.hui + hu / cp.phu;

    double reg;
    if (tavg <= cp.t_base || tavg > 1.5 * cp.t_opt) {
        reg = 0.0;
    } else {
        reg = std::sin((3.14159265358979323846 / 2.0) * (tavg - cp.t_base) /
                       (cp.t_opt - cp.t_base));
        if (reg < 0.0) reg = 0.0;
        if (reg > 1.0) reg = 1.0;
    }
    n.reg = reg;

    n.huf = n.hui / (n.hui + std::exp(cp.ah1 - cp.ah2 * n.hui));
    double dlai = (n.huf - s.huf) * cp.lai_max *
                  (1.0 - std::exp(5.0 * (s.lai - cp.lai_max))) * std::sqrt(reg);
    if (dlai < 0.0) dlai = 0.0;
    n.lai = s.lai + dlai;

    const double intercepted = 1.0 - std::exp(-0.65 * s.lai);
    double par_crop = 0.0;
    for (double par : par_hourly) par_crop += par * intercepted * dt;
    n.biomass = s.biomass + 0.001 * cp.be * par_crop * reg;
    return n;
}

} // namespace

TEST_CASE("crop parameter validation") {
    CHECK_NOTHROW(kParams.validate());
    CropParams bad = kParams;
    bad.t_opt = bad.t_base;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = kParams;
    bad.hi = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("heat units clamp at the base temperature") {
    CHECK(heat_unit({10.0, 20.0, 15.0}, kParams) == doctest::Approx(11.0));
    CHECK(heat_unit({-10.0, 2.0, -4.0}, kParams) == 0.0);
}

TEST_CASE("temperature stress boundaries") {
    // At or below the base temperature growth stops.
    CHECK(temperature_stress({0.0, 8.0, 4.0}, kParams) == 0.0);
    CHECK(temperature_stress({0.0, 6.0, 3.0}, kParams) == 0.0);
    // Above 1.5x the optimum growth also stops.
    CHECK(temperature_stress({20.0, 30.0, 24.1}, kParams) == 0.0);
    // Exactly 1.5x the optimum is still (marginally) growing.
    CHECK(temperature_stress({20.0, 28.0, 24.0}, kParams) > 0.0);
    // At the optimum the stress factor is 1.
    CHECK(temperature_stress({12.0, 20.0, 16.0}, kParams) == doctest::Approx(1.0));
    // Midway between base and optimum: sin(pi/4).
    CHECK(temperature_stress({6.0, 14.0, 10.0}, kParams) ==
          doctest::Approx(std::sin(kPi / 4.0)));
}

TEST_CASE("heat unit factor is increasing in accumulated heat units") {
    double prev = heat_unit_factor(0.0, kParams);
    for (double hui = 0.05; hui <= 1.2; hui += 0.05) {
        const double huf = heat_unit_factor(hui, kParams);
        CHECK(huf > prev);
        prev = huf;
    }
    CHECK(heat_unit_factor(1.0, kParams) > 0.9);
}

TEST_CASE("five-day growth matches the independent oracle to 1e-9") {
    CropState state;
    OracleState oracle;
    const double days[5][3] = {{12.0, 24.0, 18.0},
                               {10.0, 22.0, 16.0},
                               {14.0, 26.0, 20.0},
                               {8.0, 18.0, 13.0},
                               {13.0, 25.0, 19.0}};
    for (int d = 0; d < 5; ++d) {
        std::vector<double> par;
        for (int h = 0; h < 24; ++h)
            par.push_back(h >= 6 && h <= 19 ? 150.0 + 20.0 * h - d : 0.0);
        const DailyClimate climate{days[d][0], days[d][1], days[d][2]};
        state = advance_day(state, climate, par, kParams, 1.0);
        oracle = oracle_day(oracle, days[d][0], days[d][1], days[d][2], par,
                            kParams, 1.0);
        CHECK(state.hui == doctest::Approx(oracle.hui).epsilon(1e-9));
        CHECK(state.huf == doctest::Approx(oracle.huf).epsilon(1e-9));
        CHECK(state.lai == doctest::Approx(oracle.lai).epsilon(1e-9));
        CHECK(state.biomass == doctest::Approx(oracle.biomass).epsilon(1e-9));
        CHECK(state.reg == doctest::Approx(oracle.reg).epsilon(1e-9));
        CHECK(state.day == d + 1);
    }
    CHECK(state.biomass > 0.0);
}

TEST_CASE("phenology advance leaves biomass untouched") {
    CropState state;
    state.biomass = 1.25;
    const CropState next =
        advance_phenology(state, {12.0, 24.0, 18.0}, kParams);
    CHECK(next.biomass == 1.25);
    CHECK(next.hui > 0.0);
}

TEST_CASE("first-day interception is zero with no canopy") {
    CropState state; // lai = 0
    std::vector<double> par(24, 300.0);
    const CropState next = advance_day(state, {12.0, 24.0, 18.0}, par, kParams, 1.0);
    CHECK(next.biomass == 0.0);
    CHECK(next.lai > 0.0);
}

TEST_CASE("yield and relative land output") {
    CropState final_state;
    final_state.biomass = 10.0;
    const YieldResult r = yield_and_ler(final_state, kParams, 19.0);
    CHECK(r.yield_t_ha == doctest::Approx(9.5));
    CHECK(r.ler_crop == doctest::Approx(0.5));
    CHECK_THROWS_AS((void)yield_and_ler(final_state, kParams, 0.0), NumericalError);
}
