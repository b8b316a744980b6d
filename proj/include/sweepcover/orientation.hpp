#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sweepcover/geometry.hpp"

namespace sweepcover {

/// Sweep frame: u is the sweep (swath) axis, v = u rotated +pi/2 is the
/// projection axis swath lines are stacked along. Swaths are undirected, so u
/// is canonicalized to an angle in [0, pi).
struct SweepFrame {
    Point2 u{1.0, 0.0};
    Point2 v{0.0, 1.0};
    double width = 0.0;   // extent of the polygon along u
    double height = 0.0;  // extent of the polygon along v

    double angle() const { return std::atan2(u.y, u.x); }
};

enum class OrientationKind { mar, scan, pca, minwidth };

struct OrientationStrategy {
    OrientationKind kind = OrientationKind::minwidth;
    double scan_step = kPi / 180.0;  // radians; only for scan
    double scan_range = kPi;         // radians; only for scan
};

inline const char* to_string(OrientationKind k) {
    switch (k) {
        case OrientationKind::mar: return "mar";
        case OrientationKind::scan: return "scan";
        case OrientationKind::pca: return "pca";
        case OrientationKind::minwidth: return "minwidth";
    }
    return "?";
}

inline OrientationKind orientation_kind_from_string(const std::string& s) {
    if (s == "mar") return OrientationKind::mar;
    if (s == "scan") return OrientationKind::scan;
    if (s == "pca") return OrientationKind::pca;
    if (s == "minwidth") return OrientationKind::minwidth;
    throw PlannerError(ErrorKind::invalid_argument, "unknown orientation strategy '" + s + "'");
}

namespace detail {

/// Flips u so its angle lies in [0, pi): sweep direction is orientation-free.
inline Point2 canonical_direction(Point2 u) {
    if (u.y < 0.0 || (u.y == 0.0 && u.x < 0.0)) return -u;
    return u;
}

inline SweepFrame frame_for_direction(const std::vector<Point2>& pts, Point2 u_raw) {
    SweepFrame f;
    f.u = canonical_direction(normalized(u_raw));
    f.v = rotate90(f.u);
    double u_min = dot(pts.front(), f.u), u_max = u_min;
    double v_min = dot(pts.front(), f.v), v_max = v_min;
    for (const Point2& p : pts) {
        double pu = dot(p, f.u), pv = dot(p, f.v);
        u_min = std::min(u_min, pu);
        u_max = std::max(u_max, pu);
        v_min = std::min(v_min, pv);
        v_max = std::max(v_max, pv);
    }
    f.width = u_max - u_min;
    f.height = v_max - v_min;
    return f;
}

inline std::vector<Point2> polygon_vertices(const Polygon& poly) {
    std::vector<Point2> pts;
    poly.for_each_ring([&](const std::vector<Point2>& ring) {
        pts.insert(pts.end(), ring.begin(), ring.end());
    });
    return pts;
}

}  // namespace detail

/// Minimum-area enclosing rectangle via rotating calipers over the convex
/// hull: the optimum has one side collinear with a hull edge, so scanning
/// hull-edge directions is exhaustive. u is the rectangle's long side.
inline SweepFrame min_area_rect(const Polygon& poly) {
    std::vector<Point2> pts = detail::polygon_vertices(poly);
    Polygon hull = convex_hull(pts);  // throws on degenerate input
    const std::vector<Point2>& hv = hull.exterior();
    double best_area = std::numeric_limits<double>::infinity();
    Point2 best_u{1.0, 0.0};
    for (size_t i = 0, n = hv.size(); i < n; ++i) {
        Point2 edge = hv[(i + 1) % n] - hv[i];
        SweepFrame f = detail::frame_for_direction(hv, edge);
        double area = f.width * f.height;
        if (area < best_area) {
            best_area = area;
            best_u = f.u;
        }
    }
    SweepFrame f = detail::frame_for_direction(pts, best_u);
    if (f.height > f.width) f = detail::frame_for_direction(pts, rotate90(f.u));
    return f;
}

enum class ScanObjective { projected_height, rectangle_area };

/// Discretized angle search over {0, step, 2*step, ...} < range, minimizing
/// the objective (default: projected height, a fewest-swaths proxy). Ties go
/// to the smallest angle.
inline SweepFrame orientation_by_scan(const Polygon& poly, double step, double range = kPi,
                                      ScanObjective objective = ScanObjective::projected_height) {
    if (!(step > 0.0)) {
        throw PlannerError(ErrorKind::invalid_argument, "scan step must be positive");
    }
    std::vector<Point2> pts = detail::polygon_vertices(poly);
    double best_value = std::numeric_limits<double>::infinity();
    SweepFrame best;
    for (long k = 0; k * step < range - 1e-12; ++k) {
        double angle = k * step;
        SweepFrame f = detail::frame_for_direction(pts, Point2{std::cos(angle), std::sin(angle)});
        double value =
            objective == ScanObjective::projected_height ? f.height : f.width * f.height;
        if (value < best_value) {
            best_value = value;
            best = f;
        }
    }
    return best;
}

struct PcaOrientation {
    SweepFrame frame;
    bool mar_fallback = false;  // isotropic vertex cloud, fell back to MAR
};

/// Principal axis of the vertex distribution. Falls back to MAR when the
/// covariance eigenvalues are indistinguishable.
inline PcaOrientation orientation_by_pca(const Polygon& poly) {
    std::vector<Point2> pts = detail::polygon_vertices(poly);
    Point2 mean{0.0, 0.0};
    for (const Point2& p : pts) mean = mean + p;
    mean = mean / static_cast<double>(pts.size());
    double cxx = 0.0, cyy = 0.0, cxy = 0.0;
    for (const Point2& p : pts) {
        Point2 d = p - mean;
        cxx += d.x * d.x;
        cyy += d.y * d.y;
        cxy += d.x * d.y;
    }
    double n = static_cast<double>(pts.size());
    cxx /= n;
    cyy /= n;
    cxy /= n;
    double tr = cxx + cyy;
    double disc = std::sqrt(std::max(0.0, (cxx - cyy) * (cxx - cyy) + 4.0 * cxy * cxy));
    double lambda_max = 0.5 * (tr + disc);
    if (disc <= 1e-12 * std::max(std::abs(lambda_max), 1e-300)) {
        return {min_area_rect(poly), true};
    }
    double theta = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
    Point2 u{std::cos(theta), std::sin(theta)};
    if (u.x < 0.0 || (u.x == 0.0 && u.y < 0.0)) u = -u;
    return {detail::frame_for_direction(pts, u), false};
}

/// Orientation minimizing the extent orthogonal to the sweep direction
/// (rotating-calipers width): the minimum is attained with u parallel to a
/// convex hull edge.
inline SweepFrame orientation_min_width(const Polygon& poly) {
    std::vector<Point2> pts = detail::polygon_vertices(poly);
    Polygon hull = convex_hull(pts);
    const std::vector<Point2>& hv = hull.exterior();
    double best_height = std::numeric_limits<double>::infinity();
    Point2 best_u{1.0, 0.0};
    for (size_t i = 0, n = hv.size(); i < n; ++i) {
        Point2 edge = hv[(i + 1) % n] - hv[i];
        SweepFrame f = detail::frame_for_direction(hv, edge);
        if (f.height < best_height) {
            best_height = f.height;
            best_u = f.u;
        }
    }
    return detail::frame_for_direction(pts, best_u);
}

inline SweepFrame compute_orientation(const Polygon& poly, const OrientationStrategy& strategy) {
    switch (strategy.kind) {
        case OrientationKind::mar: return min_area_rect(poly);
        case OrientationKind::scan:
            return orientation_by_scan(poly, strategy.scan_step, strategy.scan_range);
        case OrientationKind::pca: return orientation_by_pca(poly).frame;
        case OrientationKind::minwidth: return orientation_min_width(poly);
    }
    throw PlannerError(ErrorKind::invalid_argument, "unknown orientation strategy");
}

}  // namespace sweepcover
