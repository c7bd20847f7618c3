#include "agripv/shading.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>

namespace bg = boost::geometry;

namespace agripv {

namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint>;
using BMulti = bg::model::multi_polygon<BPolygon>;

BPolygon make_polygon(const std::vector<std::array<double, 2>>& pts) {
    BPolygon poly;
    for (const auto& p : pts) bg::append(poly.outer(), BPoint(p[0], p[1]));
    bg::append(poly.outer(), BPoint(pts[0][0], pts[0][1]));
    bg::correct(poly);
    return poly;
}

} // namespace

void ArrayLayout::validate() const {
    if (rows < 1 || panels_per_row < 1)
        throw ConfigError("layout: rows and panels_per_row must be >= 1");
    if (panel_width <= 0.0 || panel_height <= 0.0)
        throw ConfigError("layout: panel dimensions must be positive");
    if (mount_height <= 0.0)
        throw ConfigError("layout: mount height must be positive");
    if (mount_height < panel_height / 2.0)
        throw ConfigError("layout: mount height must be at least half the panel height");
    if (row_pitch <= 0.0 || panel_pitch <= 0.0)
        throw ConfigError("layout: pitches must be positive");
    if (field_polygon.size() < 3)
        throw ConfigError("layout: field polygon needs at least 3 vertices");
    const BPolygon poly = make_polygon(field_polygon);
    if (bg::area(poly) <= 0.0)
        throw ConfigError("layout: field polygon has non-positive area");
    std::string reason;
    if (!bg::is_valid(poly, reason))
        throw ConfigError("layout: field polygon invalid: " + reason);
}

std::vector<Vec3> ArrayLayout::panel_centers() const {
    std::vector<Vec3> centers;
    centers.reserve(static_cast<std::size_t>(rows) * panels_per_row);
    for (int i = 0; i < rows; ++i) {
        const double y = (i - (rows - 1) / 2.0) * row_pitch;
        for (int j = 0; j < panels_per_row; ++j) {
            const double x = (j - (panels_per_row - 1) / 2.0) * panel_pitch;
            centers.push_back({x, y, mount_height});
        }
    }
    return centers;
}

double ArrayLayout::field_area() const {
    return bg::area(make_polygon(field_polygon));
}

Vec3 sun_vector(const SolarPosition& sun) {
    const double beta = deg2rad(sun.altitude_deg);
    const double phi = deg2rad(sun.azimuth_deg);
    // South-referenced, east-positive azimuth; x east, y north.
    return {std::cos(beta) * std::sin(phi), -std::cos(beta) * std::cos(phi),
            std::sin(beta)};
}

std::array<Vec3, 4> panel_corners(const Vec3& center,
                                  const PanelOrientation& panel, double width,
                                  double height) {
    const double phi = deg2rad(panel.azimuth_deg);
    const double tilt = deg2rad(panel.tilt_deg);
    // u: horizontal along-row edge; v: tilted edge; both unit, orthogonal to
    // the panel normal.
    const Vec3 u{std::cos(phi), std::sin(phi), 0.0};
    const Vec3 v{-std::cos(tilt) * std::sin(phi), std::cos(tilt) * std::cos(phi),
                 std::sin(tilt)};
    const double hw = width / 2.0, hh = height / 2.0;
    auto corner = [&](double su, double sv) {
        return Vec3{center.x + su * hw * u.x + sv * hh * v.x,
                    center.y + su * hw * u.y + sv * hh * v.y,
                    center.z + su * hw * u.z + sv * hh * v.z};
    };
    return {corner(-1, -1), corner(1, -1), corner(1, 1), corner(-1, 1)};
}

double shading_factor(const ArrayLayout& layout, const SolarPosition& sun,
                      const PanelOrientation& panel) {
    if (!sun.daylight()) return 0.0;
    const Vec3 s = sun_vector(sun);
    if (s.z <= 1e-9) return 0.0;
    if (std::fabs(incidence_cosine(sun, panel)) < 1e-9) return 0.0;

    BMulti shadows;
    for (const Vec3& c : layout.panel_centers()) {
        const auto corners =
            panel_corners(c, panel, layout.panel_width, layout.panel_height);
        BPolygon quad;
        for (const Vec3& p : corners) {
            const double t = p.z / s.z;
            bg::append(quad.outer(), BPoint(p.x - t * s.x, p.y - t * s.y));
        }
        bg::append(quad.outer(),
                   BPoint(corners[0].x - corners[0].z / s.z * s.x,
                          corners[0].y - corners[0].z / s.z * s.y));
        bg::correct(quad);
        if (bg::area(quad) <= 0.0) continue;
        BMulti merged;
        bg::union_(shadows, quad, merged);
        shadows = std::move(merged);
    }

    const BPolygon field = make_polygon(layout.field_polygon);
    BMulti clipped;
    bg::intersection(shadows, field, clipped);
    const double field_area = bg::area(field);
    const double frac = bg::area(clipped) / field_area;
    return std::clamp(frac, 0.0, 1.0);
}

double ShadingAffineFit::predict(double x) const {
    return std::clamp(g1 * x + g2, 0.0, 1.0);
}

ShadingAffineFit fit_affine_sf(const ArrayLayout& layout,
                               const SolarPosition& sun,
                               const PanelOrientation& tracking,
                               const AngleLimits& tilt_limits, int t) {
    if (!sun.daylight())
        throw NumericalError("fit_affine_sf: sun below horizon");

    const double lo = std::max(tracking.tilt_deg - 90.0, tilt_limits.lo_deg);
    const double hi = std::min(tracking.tilt_deg + 90.0, tilt_limits.hi_deg);
    std::vector<double> xs, ss;
    for (double tilt = lo; tilt <= hi + 1e-9; tilt += 1.0) {
        const double clamped_tilt = std::min(tilt, hi);
        PanelOrientation p{tracking.azimuth_deg, clamped_tilt};
        xs.push_back(std::cos(deg2rad(clamped_tilt - tracking.tilt_deg)));
        ss.push_back(shading_factor(layout, sun, p));
    }
    const std::size_t n = xs.size();
    if (n < 2) throw NumericalError("fit_affine_sf: fewer than 2 sweep points");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ss[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ss[i];
    }
    const double denom = n * sxx - sx * sx;
    ShadingAffineFit fit;
    fit.t = t;
    if (std::fabs(denom) < 1e-12) {
        fit.g1 = 0.0;
        fit.g2 = sy / n;
    } else {
        fit.g1 = (n * sxy - sx * sy) / denom;
        fit.g2 = (sy - fit.g1 * sx) / n;
    }
    double ss_res = 0, ss_tot = 0, max_res = 0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ss[i] - (fit.g1 * xs[i] + fit.g2);
        ss_res += r * r;
        ss_tot += (ss[i] - mean) * (ss[i] - mean);
        max_res = std::max(max_res, std::fabs(r));
    }
    fit.max_residual = max_res;
    fit.r_squared = ss_tot > 1e-300 ? 1.0 - ss_res / ss_tot
                                    : (ss_res < 1e-18 ? 1.0 : 0.0);
    fit.valid = true;
    return fit;
}

double par_field_affine(const ShadingAffineFit& fit, double par_db,
                        double par_diff, double x) {
    return (1.0 - fit.predict(x)) * par_db + par_diff;
}

double par_field_exact(double s_f, double par_db, double par_diff) {
    return (1.0 - std::clamp(s_f, 0.0, 1.0)) * par_db + par_diff;
}

std::vector<ShadingAffineFit> fit_season_serial(
    const ArrayLayout& layout, const std::vector<SolarPosition>& sun,
    const std::vector<TrackingResult>& tracking,
    const AngleLimits& tilt_limits) {
    std::vector<ShadingAffineFit> fits(sun.size());
    for (std::size_t t = 0; t < sun.size(); ++t) {
        if (!sun[t].daylight()) continue;
        fits[t] = fit_affine_sf(layout, sun[t], tracking[t].orientation,
                                tilt_limits, static_cast<int>(t));
    }
    return fits;
}

std::vector<ShadingAffineFit> fit_season(const ArrayLayout& layout,
                                         const std::vector<SolarPosition>& sun,
                                         const std::vector<TrackingResult>& tracking,
                                         const AngleLimits& tilt_limits,
                                         int num_threads) {
    std::vector<ShadingAffineFit> fits(sun.size());
    const long n = static_cast<long>(sun.size());
#ifdef _OPENMP
    if (num_threads > 0) omp_set_num_threads(num_threads);
#pragma omp parallel for schedule(dynamic)
#endif
    for (long t = 0; t < n; ++t) {
        if (!sun[t].daylight()) continue;
        fits[t] = fit_affine_sf(layout, sun[t], tracking[t].orientation,
                                tilt_limits, static_cast<int>(t));
    }
    return fits;
}

} // namespace agripv
