#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "agripv/pv.hpp"

using namespace agripv;

namespace {

PvParams make_params() {
    PvParams p;
    p.area_total_m2 = 5.76;
    p.efficiency = 0.2;
    p.alpha = 0.58;
    p.price_profile.fill(1.0e-4);
    return p;
}

} // namespace

TEST_CASE("pv parameter validation") {
    PvParams p = make_params();
    CHECK_NOTHROW(p.validate());
    p.efficiency = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = make_params();
    p.alpha = 1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = make_params();
    p.price_profile[3] = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("plane-of-array irradiance components") {
    WeatherSample wx;
    wx.dni = 800.0;
    wx.dhi = 100.0;
    const SolarPosition sun{0.0, 40.0};
    // Sun tracking: full direct beam, diffuse reduced by the tilt.
    const PanelOrientation tracking{0.0, 50.0};
    const Irradiance irr = panel_irradiance(wx, sun, tracking);
    CHECK(irr.i_db == doctest::Approx(800.0).epsilon(1e-12));
    CHECK(irr.i_diff ==
          doctest::Approx(100.0 * (1.0 + std::cos(deg2rad(50.0))) / 2.0));
    // Sun behind the panel: no direct beam, never negative.
    const PanelOrientation away{180.0, 50.0};
    CHECK(panel_irradiance(wx, sun, away).i_db == 0.0);
}

TEST_CASE("linearized deviations equal the exact model on the circle") {
    // For a panel whose azimuth tracks the sun, the exact direct-beam and
    // diffuse deviations from sun tracking are linear in
    // (x, y) = (cos, sin) of the tilt deviation. Identity to 1e-9.
    const PvParams params = make_params();
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> alt(5.0, 85.0);
    std::uniform_real_distribution<double> az(-120.0, 120.0);
    std::uniform_real_distribution<double> dev(-89.0, 89.0);
    std::uniform_real_distribution<double> irr(0.0, 1000.0);
    for (int i = 0; i < 1000; ++i) {
        const SolarPosition sun{az(rng), alt(rng)};
        WeatherSample wx;
        wx.dni = irr(rng);
        wx.dhi = irr(rng);
        const double track_tilt = 90.0 - sun.altitude_deg;
        const double delta = dev(rng);
        const double x = std::cos(deg2rad(delta));
        const double y = std::sin(deg2rad(delta));

        const PanelOrientation tracking{sun.azimuth_deg, track_tilt};
        const PanelOrientation panel{sun.azimuth_deg, track_tilt + delta};
        const Irradiance base = panel_irradiance(wx, sun, tracking);
        // Signed direct beam (the linear model carries the sign).
        const double exact_db = wx.dni * incidence_cosine(sun, panel);
        const double exact_diff = panel_irradiance(wx, sun, panel).i_diff;

        const Deviations d = deviations(params, wx, sun, x, y);
        CHECK(d.d_i_db == doctest::Approx(exact_db - base.i_db).epsilon(1e-9));
        CHECK(d.d_i_diff ==
              doctest::Approx(exact_diff - base.i_diff).epsilon(1e-9));
        CHECK(d.d_power_w == doctest::Approx(params.area_total_m2 *
                                             params.efficiency *
                                             (d.d_i_db + d.d_i_diff)));
    }
}

TEST_CASE("revenue uses the hour-of-day price profile") {
    PvParams p = make_params();
    p.price_profile.fill(0.0);
    p.price_profile[6] = 2.0e-4;
    p.price_profile[7] = 1.0e-4;
    const std::vector<double> powers{1000.0, 1000.0, 1000.0};
    // Starting at hour 6: hours 6, 7, 8.
    CHECK(revenue(powers, p, 1.0, 6) == doctest::Approx(0.2 + 0.1));
    // Half-hour steps halve the energy.
    CHECK(revenue({1000.0}, p, 0.5, 6) == doctest::Approx(0.1));
    // Wraps around midnight.
    std::vector<double> day(48, 1000.0);
    CHECK(revenue(day, p, 1.0, 0) == doctest::Approx(2.0 * (0.2 + 0.1)));
}

TEST_CASE("relative pv revenue against the tracking baseline") {
    const PvParams p = make_params();
    const std::vector<double> tracking{1000.0, 2000.0};
    const std::vector<double> zero_delta{0.0, 0.0};
    CHECK(ler_pv(zero_delta, tracking, p, 1.0) == doctest::Approx(1.0));
    const std::vector<double> drop{-500.0, -1000.0};
    CHECK(ler_pv(drop, tracking, p, 1.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS((void)ler_pv({0.0}, tracking, p, 1.0), DataError);
    const std::vector<double> dark{0.0, 0.0};
    CHECK_THROWS_AS((void)ler_pv(zero_delta, dark, p, 1.0), NumericalError);
}
