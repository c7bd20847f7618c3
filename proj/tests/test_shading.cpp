#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "agripv/shading.hpp"
#include "raster_oracle.hpp"
#include "scenario_fixture.hpp"

using namespace agripv;

namespace {

ArrayLayout single_panel_layout() {
    ArrayLayout layout;
    layout.rows = 1;
    layout.panels_per_row = 1;
    layout.panel_width = 2.0;
    layout.panel_height = 1.0;
    layout.mount_height = 1.5;
    layout.row_pitch = 3.0;
    layout.panel_pitch = 3.0;
    layout.field_polygon = {{-5.0, -5.0}, {5.0, -5.0}, {5.0, 5.0}, {-5.0, 5.0}};
    return layout;
}

} // namespace

TEST_CASE("layout validation") {
    ArrayLayout ok = single_panel_layout();
    CHECK_NOTHROW(ok.validate());
    ArrayLayout bad = ok;
    bad.mount_height = 0.3; // below half the panel height
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = ok;
    bad.field_polygon = {{0.0, 0.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK(ok.field_area() == doctest::Approx(100.0));
}

TEST_CASE("panel centers form a grid centered on the origin") {
    const auto cfg = testing::make_test_scenario();
    const auto centers = cfg.layout.panel_centers();
    REQUIRE(centers.size() == 6);
    double sx = 0.0, sy = 0.0;
    for (const auto& c : centers) {
        sx += c.x;
        sy += c.y;
        CHECK(c.z == doctest::Approx(1.2));
    }
    CHECK(sx == doctest::Approx(0.0));
    CHECK(sy == doctest::Approx(0.0));
}

TEST_CASE("flat panel under a high sun casts its own footprint") {
    const ArrayLayout layout = single_panel_layout();
    const SolarPosition sun{0.0, 89.9}; // nearly overhead
    const PanelOrientation flat{0.0, 0.0};
    const double expect = layout.panel_width * layout.panel_height /
                          layout.field_area();
    CHECK(shading_factor(layout, sun, flat) == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("shading factor is zero at night and for edge-on panels") {
    const ArrayLayout layout = single_panel_layout();
    CHECK(shading_factor(layout, {0.0, -10.0}, {0.0, 30.0}) == 0.0);
    // Panel normal perpendicular to the sun's rays: zero-width shadow. With
    // the panel facing away (azimuth offset 180) and tilt equal to the solar
    // altitude the incidence cosine vanishes exactly.
    const SolarPosition sun{0.0, 30.0};
    const PanelOrientation perp{180.0, 30.0};
    CHECK(std::fabs(incidence_cosine(sun, perp)) < 1e-9);
    CHECK(shading_factor(layout, sun, perp) == 0.0);
}

TEST_CASE("shadow area scales with the cosine of the tilt deviation") {
    // With the panel azimuth equal to the solar azimuth and shadows fully
    // inside the field, the shadow area is proportional to cos(deviation).
    const ArrayLayout layout = single_panel_layout();
    const SolarPosition sun{20.0, 55.0};
    const double track_tilt = 90.0 - sun.altitude_deg;
    const double s0 =
        shading_factor(layout, sun, {sun.azimuth_deg, track_tilt});
    for (double delta : {-40.0, -20.0, -10.0, 10.0, 25.0}) {
        const double s =
            shading_factor(layout, sun, {sun.azimuth_deg, track_tilt + delta});
        CHECK(s == doctest::Approx(s0 * std::cos(deg2rad(delta))).epsilon(1e-6));
    }
}

TEST_CASE("polygon union agrees with the raster oracle") {
    const auto cfg = testing::make_test_scenario();
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> alt(15.0, 75.0);
    std::uniform_real_distribution<double> az(-80.0, 80.0);
    std::uniform_real_distribution<double> tilt(0.0, 80.0);
    for (int i = 0; i < 12; ++i) {
        const SolarPosition sun{az(rng), alt(rng)};
        const PanelOrientation panel{az(rng), tilt(rng)};
        const double fast = shading_factor(cfg.layout, sun, panel);
        const double slow =
            testing::raster_shading_factor(cfg.layout, sun, panel, 0.02);
        CAPTURE(sun.azimuth_deg);
        CAPTURE(sun.altitude_deg);
        CAPTURE(panel.tilt_deg);
        CHECK(std::fabs(fast - slow) < 0.005);
    }
}

TEST_CASE("affine fit is near exact for in-field non-overlapping shadows") {
    const ArrayLayout layout = single_panel_layout();
    const SolarPosition sun{10.0, 60.0};
    const PanelOrientation tracking{10.0, 30.0};
    const AngleLimits tilt_limits{0.0, 90.0};
    const ShadingAffineFit fit =
        fit_affine_sf(layout, sun, tracking, tilt_limits, 7);
    CHECK(fit.valid);
    CHECK(fit.t == 7);
    CHECK(fit.r_squared > 0.999);
    CHECK(fit.max_residual < 1e-3);
    // Prediction at the tracking point matches the measured value.
    const double s_track = shading_factor(layout, sun, tracking);
    CHECK(fit.predict(1.0) == doctest::Approx(s_track).epsilon(1e-3));
    // Predictions clamp into [0, 1].
    CHECK(fit.predict(1e6) <= 1.0);
    CHECK(fit.predict(-1e6) >= 0.0);
}

TEST_CASE("fit throws when the sun is down") {
    const ArrayLayout layout = single_panel_layout();
    CHECK_THROWS_AS((void)fit_affine_sf(layout, {0.0, -5.0}, {0.0, 30.0},
                                        AngleLimits{0.0, 90.0}),
                    NumericalError);
}

TEST_CASE("parallel season fit matches the serial reference") {
    const auto cfg = testing::make_test_scenario(2);
    const auto ctx_wx = synthesize_clear_sky(cfg.site, cfg.synthetic->start_day,
                                             cfg.days, cfg.synthetic->clear_sky);
    std::vector<SolarPosition> sun;
    std::vector<TrackingResult> tracking;
    for (const auto& s : ctx_wx) {
        sun.push_back(sun_position(cfg.site, s.time));
        tracking.push_back(
            sun_tracking_orientation(sun.back(), cfg.limits, cfg.park));
    }
    const auto serial =
        fit_season_serial(cfg.layout, sun, tracking, cfg.limits.tilt);
    const auto parallel =
        fit_season(cfg.layout, sun, tracking, cfg.limits.tilt, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t t = 0; t < serial.size(); ++t) {
        CHECK(serial[t].valid == parallel[t].valid);
        if (serial[t].valid) {
            CHECK(serial[t].g1 == parallel[t].g1);
            CHECK(serial[t].g2 == parallel[t].g2);
        }
    }
}

TEST_CASE("field PAR helpers") {
    ShadingAffineFit fit;
    fit.g1 = 0.1;
    fit.g2 = 0.05;
    fit.valid = true;
    const double par = par_field_affine(fit, 400.0, 60.0, 0.9);
    CHECK(par == doctest::Approx((1.0 - 0.14) * 400.0 + 60.0));
    CHECK(par_field_exact(0.25, 400.0, 60.0) == doctest::Approx(360.0));
    CHECK(par_field_exact(2.0, 400.0, 60.0) == doctest::Approx(60.0)); // clamped
}
