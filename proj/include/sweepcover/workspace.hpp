#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/geometries.hpp>
#include <boost/geometry/geometries/point_xy.hpp>

#include "sweepcover/geometry.hpp"

namespace sweepcover {

/// ROI, obstacle set, headland width and the derived buffered feasible space.
struct Workspace {
    Polygon roi;
    std::vector<Polygon> obstacles;
    double headland = 0.0;
    double buffer_scale = 1.0;  // headland expressed in swath widths; metadata
    Region feasible;
};

namespace detail {

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BRing = bg::model::ring<BPoint, false, true>;  // ccw, closed
using BPoly = bg::model::polygon<BPoint, false, true>;
using BMultiPoly = bg::model::multi_polygon<BPoly>;
using BLine = bg::model::linestring<BPoint>;
using BMultiLine = bg::model::multi_linestring<BLine>;

inline constexpr double kAreaDust = 1e-9;  // m^2; boolean-op slivers below this are dropped

inline BPoly to_boost(const Polygon& poly) {
    BPoly out;
    for (const Point2& p : poly.exterior()) out.outer().push_back(BPoint(p.x, p.y));
    out.outer().push_back(out.outer().front());
    for (const auto& hole : poly.holes()) {
        out.inners().emplace_back();
        for (const Point2& p : hole) out.inners().back().push_back(BPoint(p.x, p.y));
        out.inners().back().push_back(out.inners().back().front());
    }
    bg::correct(out);
    return out;
}

inline std::vector<Point2> from_boost_ring(const BRing& ring) {
    std::vector<Point2> out;
    out.reserve(ring.size());
    for (const BPoint& p : ring) out.push_back({bg::get<0>(p), bg::get<1>(p)});
    return out;
}

inline Region from_boost(const BMultiPoly& multi) {
    Region region;
    for (const BPoly& poly : multi) {
        if (std::abs(bg::area(poly)) <= kAreaDust) continue;
        std::vector<std::vector<Point2>> holes;
        for (const BRing& hole : poly.inners()) holes.push_back(from_boost_ring(hole));
        region.components.push_back(
            Polygon::unchecked(from_boost_ring(poly.outer()), std::move(holes)));
    }
    std::sort(region.components.begin(), region.components.end(),
              [](const Polygon& a, const Polygon& b) {
                  double aa = signed_area(a), ab = signed_area(b);
                  if (aa != ab) return aa > ab;
                  BoundingBox ba = a.bounds(), bb = b.bounds();
                  return ba.min_x != bb.min_x ? ba.min_x < bb.min_x : ba.min_y < bb.min_y;
              });
    return region;
}

/// Number of arc points for a full circle of radius h keeping the chord
/// (sagitta) error below min(h/50, 0.01 m).
inline int arc_point_count(double h) {
    double err = std::min(h / 50.0, 0.01);
    double ratio = std::clamp(1.0 - err / h, -1.0, 1.0);
    double step = 2.0 * std::acos(ratio);
    int n = static_cast<int>(std::ceil(2.0 * kPi / step));
    return std::max(n, 8);
}

/// The set of points within distance h of the polygon's boundary rings.
inline BMultiPoly boundary_strip(const Polygon& poly, double h) {
    BMultiLine rings;
    poly.for_each_ring([&](const std::vector<Point2>& ring) {
        BLine line;
        for (const Point2& p : ring) line.push_back(BPoint(p.x, p.y));
        line.push_back(line.front());
        rings.push_back(std::move(line));
    });
    int n = arc_point_count(h);
    BMultiPoly strip;
    bg::buffer(rings, strip, bg::strategy::buffer::distance_symmetric<double>(h),
               bg::strategy::buffer::side_straight(), bg::strategy::buffer::join_round(n),
               bg::strategy::buffer::end_round(n), bg::strategy::buffer::point_circle(n));
    return strip;
}

}  // namespace detail

/// Inward offset (erosion by the closed disk of radius h): the set of points
/// of poly at distance >= h from its complement. May be empty or split into
/// several components.
inline Region offset_inward(const Polygon& poly, double h) {
    if (h < 0.0) throw PlannerError(ErrorKind::invalid_argument, "offset distance must be >= 0");
    if (h == 0.0) return Region{{poly}};
    detail::BMultiPoly eroded;
    detail::bg::difference(detail::to_boost(poly), detail::boundary_strip(poly, h), eroded);
    return detail::from_boost(eroded);
}

/// Outward offset (dilation by the closed disk of radius h). Convex corners
/// become sampled circular arcs.
inline Polygon offset_outward(const Polygon& poly, double h) {
    if (h < 0.0) throw PlannerError(ErrorKind::invalid_argument, "offset distance must be >= 0");
    if (h == 0.0) return poly;
    detail::BMultiPoly dilated;
    detail::bg::union_(detail::to_boost(poly), detail::boundary_strip(poly, h), dilated);
    Region region = detail::from_boost(dilated);
    if (region.components.size() != 1) {
        throw PlannerError(ErrorKind::invalid_polygon,
                           "outward offset produced a disconnected result");
    }
    return region.components.front();
}

/// Feasible coverage space: ROI eroded by h, minus every obstacle dilated by
/// h. Obstacles are clipped to the ROI before inflation; components are
/// sorted by descending area.
inline Workspace build_feasible(Polygon roi, std::vector<Polygon> obstacles, double h) {
    if (h < 0.0) throw PlannerError(ErrorKind::invalid_argument, "headland must be >= 0");
    Region inner = offset_inward(roi, h);
    if (inner.empty()) {
        throw PlannerError(ErrorKind::infeasible_workspace,
                           "inward offset of the ROI by h=" + std::to_string(h) +
                               " left no feasible area");
    }
    detail::BMultiPoly feasible;
    for (const Polygon& c : inner.components) {
        feasible.push_back(detail::to_boost(c));
    }
    if (!obstacles.empty()) {
        detail::BPoly roi_b = detail::to_boost(roi);
        detail::BMultiPoly blocked;
        for (const Polygon& obs : obstacles) {
            detail::BMultiPoly clipped;
            detail::bg::intersection(detail::to_boost(obs), roi_b, clipped);
            for (const Polygon& piece : detail::from_boost(clipped).components) {
                detail::BMultiPoly merged;
                detail::bg::union_(blocked, detail::to_boost(offset_outward(piece, h)), merged);
                blocked = std::move(merged);
            }
        }
        if (!blocked.empty()) {
            detail::BMultiPoly remaining;
            detail::bg::difference(feasible, blocked, remaining);
            feasible = std::move(remaining);
        }
    }
    Region result = detail::from_boost(feasible);
    if (result.empty()) {
        throw PlannerError(ErrorKind::infeasible_workspace,
                           "inflated obstacles removed all feasible area");
    }
    return Workspace{std::move(roi), std::move(obstacles), h, 1.0, std::move(result)};
}

}  // namespace sweepcover
