#pragma once

#include "agripv/mpc.hpp"

namespace agripv::testing {

/// Small synthetic scenario shared by the tests: a 2 x 3 panel array over an
/// 8 x 6 m field in a mid-latitude summer with clear-sky weather and a fast,
/// warm-season leafy crop. Shadows never overlap and stay inside the field
/// for moderate tilt deviations, so the affine shading model is near exact
/// around midday.
inline ScenarioConfig make_test_scenario(int days = 14) {
    ScenarioConfig cfg;
    cfg.site = Site{42.28, -83.74, -4.0};

    cfg.layout.rows = 2;
    cfg.layout.panels_per_row = 3;
    cfg.layout.panel_width = 1.2;
    cfg.layout.panel_height = 0.8;
    cfg.layout.mount_height = 1.2;
    cfg.layout.row_pitch = 2.5;
    cfg.layout.panel_pitch = 1.6;
    cfg.layout.field_polygon = {{-4.0, -3.0}, {4.0, -3.0}, {4.0, 3.0}, {-4.0, 3.0}};

    cfg.pv.area_total_m2 = 6 * 1.2 * 0.8;
    cfg.pv.efficiency = 0.2;
    cfg.pv.alpha = 0.58;
    for (int h = 0; h < 24; ++h)
        cfg.pv.price_profile[static_cast<std::size_t>(h)] =
            (h >= 17 && h <= 21) ? 2.5e-4 : 1.0e-4;

    cfg.crop = CropParams{4.0, 16.0, 400.0, 4.0, 5.0, 15.0, 30.0, 0.95};

    cfg.limits.azimuth = AngleLimits{-180.0, 180.0};
    cfg.limits.tilt = AngleLimits{0.0, 90.0};
    cfg.park = PanelOrientation{0.0, 0.0};

    cfg.days = days;
    cfg.dt_hours = 1.0;
    cfg.omega = 0.5;
    cfg.forecast = ForecastConfig{0.8, 0.0, 336.0};
    cfg.seed = 42;
    cfg.solve_daylight_only = true;

    SyntheticWeatherConfig syn;
    syn.start_day = CivilTime{2023, 7, 1, 0, 0, 0.0};
    syn.clear_sky = ClearSkyParams{850.0, 120.0, 18.0, 6.0};
    cfg.synthetic = syn;
    return cfg;
}

} // namespace agripv::testing
