#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sweepcover/geometry.hpp"
#include "sweepcover/orientation.hpp"
#include "sweepcover/workspace.hpp"

namespace sweepcover {

/// One coverage segment on sweep line `line_index`, running parallel to the
/// frame's u axis from a to b (a at the smaller u coordinate).
struct Swath {
    Point2 a{};
    Point2 b{};
    int line_index = 0;     // 0-based sweep line k
    int segment_index = 0;  // 0-based position along the line
    double length = 0.0;
    double z = 0.0;  // midpoint projection onto v
};

struct SwathSet {
    std::vector<Swath> swaths;
    SweepFrame frame;
    double width = 0.0;  // swath width w
    double eta_min = 0.0, eta_max = 0.0;
    int n_lines = 0;
};

/// Slivers from near-tangent clipping below this length are discarded.
inline double min_swath_length(double w) { return std::max(0.1, 0.05 * w); }

/// Min/max projection of all region vertices onto v.
inline std::pair<double, double> projection_span(const Region& region, const Point2& v) {
    if (region.empty()) {
        throw PlannerError(ErrorKind::invalid_argument, "projection span of empty region");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    region.for_each_ring([&](const std::vector<Point2>& ring) {
        for (const Point2& p : ring) {
            double z = dot(p, v);
            lo = std::min(lo, z);
            hi = std::max(hi, z);
        }
    });
    return {lo, hi};
}

/// Sweep line center offsets: n_s = ceil((eta_max - eta_min)/w) lines at
/// c_k = eta_min + (k + 1/2) w, k = 0..n_s-1 (spacing exactly w, first center
/// half a width inside the span).
inline std::vector<double> swath_line_centers(double eta_min, double eta_max, double w) {
    if (!(w > 0.0)) throw PlannerError(ErrorKind::invalid_argument, "swath width must be > 0");
    double span = eta_max - eta_min;
    if (span < 0.0) throw PlannerError(ErrorKind::invalid_argument, "eta_max < eta_min");
    if (span == 0.0) return {eta_min};  // degenerate but legal
    int n = static_cast<int>(std::ceil(span / w - 1e-12));
    n = std::max(n, 1);
    std::vector<double> centers(n);
    for (int k = 0; k < n; ++k) centers[k] = eta_min + (k + 0.5) * w;
    return centers;
}

/// Clips the infinite line {c*v + t*u} to the region: collects boundary
/// crossings with the edge parameter in [0,1], sorts them along the line and
/// keeps consecutive-pair segments whose midpoint is not outside (even-odd
/// rule; boundary counts as in). Segments shorter than min_len are dropped.
inline std::vector<Swath> clip_line_to_region(double center, const SweepFrame& frame,
                                              const Region& region, double min_len,
                                              int line_index) {
    Point2 origin = frame.v * center;
    std::vector<double> ts;
    region.for_each_edge([&](const Point2& a, const Point2& b) {
        auto hit = line_segment_intersection(origin, frame.u, a, b);
        if (!hit) return;
        auto [t, s] = *hit;
        if (s >= -1e-12 && s <= 1.0 + 1e-12) ts.push_back(t);
    });
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](double a, double b) { return std::abs(a - b) <= kGeomEps; }),
             ts.end());
    std::vector<Swath> out;
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        double t0 = ts[i], t1 = ts[i + 1];
        if (t1 - t0 <= min_len) continue;
        Point2 mid = origin + frame.u * (0.5 * (t0 + t1));
        if (point_in_region(mid, region) == PointClass::outside) continue;
        Swath s;
        s.a = origin + frame.u * t0;
        s.b = origin + frame.u * t1;
        s.line_index = line_index;
        s.segment_index = static_cast<int>(out.size());
        s.length = t1 - t0;
        s.z = dot(mid, frame.v);
        out.push_back(s);
    }
    return out;
}

/// All valid swaths over the feasible space, ordered by sweep line and then
/// by position along the line. The swath id used elsewhere is the index into
/// `swaths`.
inline SwathSet generate_swaths(const Workspace& ws, const SweepFrame& frame, double w) {
    if (ws.feasible.empty()) {
        throw PlannerError(ErrorKind::infeasible_workspace, "workspace has no feasible area");
    }
    auto [eta_min, eta_max] = projection_span(ws.feasible, frame.v);
    std::vector<double> centers = swath_line_centers(eta_min, eta_max, w);
    double min_len = min_swath_length(w);
    SwathSet set;
    set.frame = frame;
    set.width = w;
    set.eta_min = eta_min;
    set.eta_max = eta_max;
    set.n_lines = static_cast<int>(centers.size());
    for (int k = 0; k < set.n_lines; ++k) {
        std::vector<Swath> line = clip_line_to_region(centers[k], frame, ws.feasible, min_len, k);
        set.swaths.insert(set.swaths.end(), line.begin(), line.end());
    }
    std::stable_sort(set.swaths.begin(), set.swaths.end(), [&](const Swath& a, const Swath& b) {
        if (a.line_index != b.line_index) return a.line_index < b.line_index;
        double au = dot((a.a + a.b) * 0.5, frame.u);
        double bu = dot((b.a + b.b) * 0.5, frame.u);
        return au < bu;
    });
    if (set.swaths.empty()) {
        throw PlannerError(ErrorKind::empty_plan,
                           "no swaths produced: region too thin for the swath width after "
                           "buffering");
    }
    return set;
}

}  // namespace sweepcover
