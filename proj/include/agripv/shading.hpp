#pragma once

#include <array>
#include <vector>

#include "agripv/solar.hpp"

namespace agripv {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

/// Ground-plane coordinates: x east, y north, z up, in meters. All panels
/// share one orientation; centers form a regular grid centered on the origin.
struct ArrayLayout {
    int rows = 1;
    int panels_per_row = 1;
    double panel_width = 1.0;  // m, along-row edge
    double panel_height = 1.0; // m, tilted edge
    double mount_height = 1.0; // m, panel center above ground
    double row_pitch = 2.0;    // m, north-south spacing of rows
    double panel_pitch = 1.5;  // m, east-west spacing within a row
    std::vector<std::array<double, 2>> field_polygon; // simple, >= 3 vertices

    void validate() const;
    std::vector<Vec3> panel_centers() const;
    double field_area() const;
};

/// Unit vector from the ground toward the sun.
Vec3 sun_vector(const SolarPosition& sun);

/// Corners of one panel rectangle in 3D at the given orientation.
std::array<Vec3, 4> panel_corners(const Vec3& center,
                                  const PanelOrientation& panel, double width,
                                  double height);

/// Fraction of the field polygon covered by the union of all panel shadow
/// projections. Defined as 0 when the sun is at or below the horizon.
double shading_factor(const ArrayLayout& layout, const SolarPosition& sun,
                      const PanelOrientation& panel);

struct ShadingAffineFit {
    int t = -1;          // time index the fit belongs to (-1 when standalone)
    double g1 = 0.0;
    double g2 = 0.0;
    double r_squared = 0.0;
    double max_residual = 0.0;
    bool valid = false;

    /// Affine prediction clamped into [0, 1]; x = cos(tilt deviation).
    double predict(double x) const;
};

/// Sweeps the tilt deviation over [tracking tilt +- 90 deg] intersected with
/// the tilt limits at 1 degree resolution and least-squares fits the shading
/// factor against cos(deviation). Throws NumericalError with fewer than two
/// sweep points.
ShadingAffineFit fit_affine_sf(const ArrayLayout& layout,
                               const SolarPosition& sun,
                               const PanelOrientation& tracking,
                               const AngleLimits& tilt_limits, int t = -1);

/// Field-level PAR from an affine shading prediction at x = cos(deviation).
double par_field_affine(const ShadingAffineFit& fit, double par_db,
                        double par_diff, double x);

/// Field-level PAR from an explicit shading factor.
double par_field_exact(double s_f, double par_db, double par_diff);

/// Per-step fits for a season. Fits are independent across steps; the
/// parallel version runs them under OpenMP, the serial one is the reference.
/// Entries for non-daylight steps are returned with valid = false.
std::vector<ShadingAffineFit> fit_season_serial(
    const ArrayLayout& layout, const std::vector<SolarPosition>& sun,
    const std::vector<TrackingResult>& tracking, const AngleLimits& tilt_limits);

std::vector<ShadingAffineFit> fit_season(const ArrayLayout& layout,
                                         const std::vector<SolarPosition>& sun,
                                         const std::vector<TrackingResult>& tracking,
                                         const AngleLimits& tilt_limits,
                                         int num_threads = 0);

} // namespace agripv
