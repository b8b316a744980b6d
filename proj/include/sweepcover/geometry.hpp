#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sweepcover/errors.hpp"

namespace sweepcover {

// Absolute tolerance for point/edge coincidence tests, in meters. Double
// precision over field-scale coordinates (<= 1e5 m) leaves ample headroom.
inline constexpr double kGeomEps = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(const Point2& a, double s) { return {a.x * s, a.y * s}; }
inline Point2 operator*(double s, const Point2& a) { return a * s; }
inline Point2 operator/(const Point2& a, double s) { return {a.x / s, a.y / s}; }
inline Point2 operator-(const Point2& a) { return {-a.x, -a.y}; }

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double squared_norm(const Point2& a) { return a.x * a.x + a.y * a.y; }
inline double norm(const Point2& a) { return std::sqrt(squared_norm(a)); }
inline double distance(const Point2& a, const Point2& b) { return norm(b - a); }
inline Point2 rotate90(const Point2& a) { return {-a.y, a.x}; }

inline bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline bool near(const Point2& a, const Point2& b, double eps = kGeomEps) {
    return distance(a, b) <= eps;
}

inline Point2 normalized(const Point2& a) {
    double n = norm(a);
    if (n <= 0.0) {
        throw PlannerError(ErrorKind::degenerate_geometry, "cannot normalize zero-length vector");
    }
    return a / n;
}

inline Point2 rotate(const Point2& p, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Normalizes an angle to (-pi, pi].
inline double normalize_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

/// Smallest absolute difference between two directions identified mod pi.
inline double direction_difference(double a, double b) {
    double d = std::fmod(std::abs(a - b), kPi);
    return std::min(d, kPi - d);
}

struct RigidTransform {
    double rotation = 0.0;  // radians, normalized to (-pi, pi]
    Point2 translation{};

    RigidTransform() = default;
    RigidTransform(double rot, Point2 trans) : rotation(normalize_angle(rot)), translation(trans) {}

    Point2 apply(const Point2& p) const { return rotate(p, rotation) + translation; }
};

struct BoundingBox {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    void expand(const Point2& p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    void expand(const BoundingBox& o) {
        min_x = std::min(min_x, o.min_x);
        min_y = std::min(min_y, o.min_y);
        max_x = std::max(max_x, o.max_x);
        max_y = std::max(max_y, o.max_y);
    }
};

inline BoundingBox bounding_box(const std::vector<Point2>& pts) {
    BoundingBox bb{pts.front().x, pts.front().y, pts.front().x, pts.front().y};
    for (const Point2& p : pts) bb.expand(p);
    return bb;
}

// ---------------------------------------------------------------------------
// Low-level predicates
// ---------------------------------------------------------------------------

inline double ring_signed_area(const std::vector<Point2>& ring) {
    double a = 0.0;
    for (size_t i = 0, n = ring.size(); i < n; ++i) {
        const Point2& p = ring[i];
        const Point2& q = ring[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

inline double distance_point_segment(const Point2& p, const Point2& a, const Point2& b) {
    Point2 d = b - a;
    double len2 = squared_norm(d);
    if (len2 <= 0.0) return distance(p, a);
    double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return distance(p, a + d * t);
}

/// Parameter of the closest point to p along segment [a, b].
inline double project_onto_segment(const Point2& p, const Point2& a, const Point2& b) {
    Point2 d = b - a;
    double len2 = squared_norm(d);
    if (len2 <= 0.0) return 0.0;
    return std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
}

/// True if the two closed segments properly cross: a single intersection point
/// interior to both, with endpoints strictly off the other segment's line
/// (within the eps distance band).
inline bool segments_properly_cross(const Point2& p, const Point2& q, const Point2& a,
                                    const Point2& b, double eps = kGeomEps) {
    Point2 pq = q - p, ab = b - a;
    double lp = norm(pq), la = norm(ab);
    if (lp <= eps || la <= eps) return false;
    double o1 = cross(pq, a - p);  // = dist(a, line pq) * lp, signed
    double o2 = cross(pq, b - p);
    double o3 = cross(ab, p - a);
    double o4 = cross(ab, q - a);
    double m_pq = eps * lp;
    double m_ab = eps * la;
    bool ab_straddles = (o1 > m_pq && o2 < -m_pq) || (o1 < -m_pq && o2 > m_pq);
    bool pq_straddles = (o3 > m_ab && o4 < -m_ab) || (o3 < -m_ab && o4 > m_ab);
    return ab_straddles && pq_straddles;
}

/// Minimum distance between two closed segments.
inline double segment_segment_distance(const Point2& p, const Point2& q, const Point2& a,
                                       const Point2& b) {
    if (segments_properly_cross(p, q, a, b, 0.0)) return 0.0;
    return std::min(std::min(distance_point_segment(p, a, b), distance_point_segment(q, a, b)),
                    std::min(distance_point_segment(a, p, q), distance_point_segment(b, p, q)));
}

/// Even-odd crossing test of the upward ray from p against edge [a, b].
inline bool ray_crosses_edge(const Point2& p, const Point2& a, const Point2& b) {
    if ((a.y > p.y) == (b.y > p.y)) return false;
    double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
    return p.x < x_at;
}

inline bool point_in_ring(const Point2& p, const std::vector<Point2>& ring) {
    bool inside = false;
    for (size_t i = 0, n = ring.size(); i < n; ++i) {
        if (ray_crosses_edge(p, ring[i], ring[(i + 1) % n])) inside = !inside;
    }
    return inside;
}

/// Intersection of the infinite line x(t) = origin + t*dir with segment [a, b].
/// Returns (t on the line, s on the segment) or nullopt when parallel.
inline std::optional<std::pair<double, double>> line_segment_intersection(const Point2& origin,
                                                                          const Point2& dir,
                                                                          const Point2& a,
                                                                          const Point2& b) {
    Point2 e = b - a;
    double denom = cross(dir, e);
    if (std::abs(denom) <= 1e-12 * norm(e) * norm(dir)) return std::nullopt;
    double t = cross(a - origin, e) / denom;
    double s = cross(a - origin, dir) / denom;
    return std::make_pair(t, s);
}

// ---------------------------------------------------------------------------
// Polygon
// ---------------------------------------------------------------------------

enum class PointClass { inside, outside, boundary };

/// Simple closed polygon: CCW exterior ring, CW hole rings strictly inside.
/// Validity is enforced at construction; ring orientation is normalized.
class Polygon {
public:
    explicit Polygon(std::vector<Point2> exterior, std::vector<std::vector<Point2>> holes = {})
        : exterior_(std::move(exterior)), holes_(std::move(holes)) {
        normalize();
        validate();
    }

    /// Construction path for internally computed geometry (boolean op output):
    /// normalizes orientation and drops duplicate vertices but skips the
    /// O(n^2) simplicity checks.
    static Polygon unchecked(std::vector<Point2> exterior,
                             std::vector<std::vector<Point2>> holes = {}) {
        Polygon p(untrusted_tag{}, std::move(exterior), std::move(holes));
        p.normalize();
        return p;
    }

    const std::vector<Point2>& exterior() const { return exterior_; }
    const std::vector<std::vector<Point2>>& holes() const { return holes_; }

    size_t vertex_count() const {
        size_t n = exterior_.size();
        for (const auto& h : holes_) n += h.size();
        return n;
    }

    BoundingBox bounds() const {
        BoundingBox bb = bounding_box(exterior_);
        for (const auto& h : holes_) bb.expand(bounding_box(h));
        return bb;
    }

    template <typename Fn>
    void for_each_ring(Fn&& fn) const {
        fn(exterior_);
        for (const auto& h : holes_) fn(h);
    }

    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        for_each_ring([&](const std::vector<Point2>& ring) {
            for (size_t i = 0, n = ring.size(); i < n; ++i) fn(ring[i], ring[(i + 1) % n]);
        });
    }

private:
    struct untrusted_tag {};
    Polygon(untrusted_tag, std::vector<Point2> exterior, std::vector<std::vector<Point2>> holes)
        : exterior_(std::move(exterior)), holes_(std::move(holes)) {}

    static void clean_ring(std::vector<Point2>& ring) {
        for (const Point2& p : ring) {
            if (!is_finite(p)) {
                throw PlannerError(ErrorKind::invalid_polygon,
                                   "polygon ring contains non-finite coordinates");
            }
        }
        // Drop an explicit closing vertex and consecutive duplicates.
        while (ring.size() > 1 && near(ring.front(), ring.back())) ring.pop_back();
        std::vector<Point2> cleaned;
        cleaned.reserve(ring.size());
        for (const Point2& p : ring) {
            if (cleaned.empty() || !near(cleaned.back(), p)) cleaned.push_back(p);
        }
        ring = std::move(cleaned);
        if (ring.size() < 3) {
            throw PlannerError(ErrorKind::invalid_polygon, "polygon ring has fewer than 3 vertices");
        }
    }

    void normalize() {
        clean_ring(exterior_);
        if (ring_signed_area(exterior_) < 0.0) std::reverse(exterior_.begin(), exterior_.end());
        for (auto& h : holes_) {
            clean_ring(h);
            if (ring_signed_area(h) > 0.0) std::reverse(h.begin(), h.end());
        }
        if (std::abs(ring_signed_area(exterior_)) <= kGeomEps * kGeomEps) {
            throw PlannerError(ErrorKind::invalid_polygon, "polygon exterior has zero area");
        }
    }

    static void check_ring_simple(const std::vector<Point2>& ring) {
        size_t n = ring.size();
        for (size_t i = 0; i < n; ++i) {
            const Point2& a = ring[i];
            const Point2& b = ring[(i + 1) % n];
            // Spike: consecutive edges doubling back along the same line.
            const Point2& c = ring[(i + 2) % n];
            Point2 d1 = b - a, d2 = c - b;
            if (std::abs(cross(d1, d2)) <= kGeomEps * norm(d1) * norm(d2) && dot(d1, d2) < 0.0) {
                throw PlannerError(ErrorKind::invalid_polygon, "polygon ring has a spike");
            }
            for (size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;  // adjacent around the wrap
                if (segment_segment_distance(a, b, ring[j], ring[(j + 1) % n]) <= kGeomEps) {
                    throw PlannerError(ErrorKind::invalid_polygon,
                                       "polygon ring self-intersects (edges " + std::to_string(i) +
                                           " and " + std::to_string(j) + ")");
                }
            }
        }
    }

    void validate() const {
        check_ring_simple(exterior_);
        for (const auto& h : holes_) {
            check_ring_simple(h);
            for (const Point2& p : h) {
                bool on_exterior = false;
                for (size_t i = 0, n = exterior_.size(); i < n; ++i) {
                    if (distance_point_segment(p, exterior_[i], exterior_[(i + 1) % n]) <=
                        kGeomEps) {
                        on_exterior = true;
                        break;
                    }
                }
                if (on_exterior || !point_in_ring(p, exterior_)) {
                    throw PlannerError(ErrorKind::invalid_polygon,
                                       "hole vertex not strictly inside exterior");
                }
            }
            for (size_t i = 0, n = h.size(); i < n; ++i) {
                for (size_t j = 0, m = exterior_.size(); j < m; ++j) {
                    if (segments_properly_cross(h[i], h[(i + 1) % n], exterior_[j],
                                                exterior_[(j + 1) % m])) {
                        throw PlannerError(ErrorKind::invalid_polygon,
                                           "hole ring crosses exterior ring");
                    }
                }
            }
        }
    }

    std::vector<Point2> exterior_;
    std::vector<std::vector<Point2>> holes_;
};

/// Net enclosed area: exterior area minus hole areas. Positive for any valid
/// polygon (CCW exterior, CW holes).
inline double signed_area(const Polygon& poly) {
    double a = ring_signed_area(poly.exterior());
    for (const auto& h : poly.holes()) a += ring_signed_area(h);
    return a;
}

inline PointClass point_in_polygon(const Point2& p, const Polygon& poly, double eps = kGeomEps) {
    bool on_boundary = false;
    poly.for_each_edge([&](const Point2& a, const Point2& b) {
        if (!on_boundary && distance_point_segment(p, a, b) <= eps) on_boundary = true;
    });
    if (on_boundary) return PointClass::boundary;
    int crossings = 0;
    poly.for_each_edge([&](const Point2& a, const Point2& b) {
        if (ray_crosses_edge(p, a, b)) ++crossings;
    });
    return (crossings % 2 == 1) ? PointClass::inside : PointClass::outside;
}

inline Polygon apply_transform(const Polygon& poly, const RigidTransform& t) {
    auto map_ring = [&](const std::vector<Point2>& ring) {
        std::vector<Point2> out;
        out.reserve(ring.size());
        for (const Point2& p : ring) out.push_back(t.apply(p));
        return out;
    };
    std::vector<std::vector<Point2>> holes;
    holes.reserve(poly.holes().size());
    for (const auto& h : poly.holes()) holes.push_back(map_ring(h));
    return Polygon(map_ring(poly.exterior()), std::move(holes));
}

// ---------------------------------------------------------------------------
// Convex hull (monotone chain)
// ---------------------------------------------------------------------------

inline Polygon convex_hull(std::vector<Point2> points) {
    if (points.size() < 3) {
        throw PlannerError(ErrorKind::degenerate_geometry, "convex hull needs at least 3 points");
    }
    std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Point2& a, const Point2& b) { return near(a, b, 0.0); }),
                 points.end());
    size_t n = points.size();
    std::vector<Point2> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    for (size_t i = n - 1, lower = k + 1; i-- > 0;) {  // upper chain
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);
    if (hull.size() < 3) {
        throw PlannerError(ErrorKind::degenerate_geometry, "points are collinear");
    }
    return Polygon(std::move(hull));
}

// ---------------------------------------------------------------------------
// Segment intersection (parametric)
// ---------------------------------------------------------------------------

struct SegmentIntersection {
    enum class Kind {
        skew,              // lines meet at one point; t/s/point valid
        parallel,          // parallel, not collinear
        collinear_overlap, // collinear with a shared interval
        collinear_disjoint
    };

    Kind kind = Kind::parallel;
    double t = std::numeric_limits<double>::quiet_NaN();  // parameter on segment 1's line
    double s = std::numeric_limits<double>::quiet_NaN();  // parameter on segment 2's line
    bool within_segments = false;                         // both parameters in [0, 1]
    Point2 point{};                                       // skew intersection point
    double overlap_begin = 0.0, overlap_end = 0.0;        // overlap params on segment 1
    Point2 overlap_p0{}, overlap_p1{};
};

/// Parametric intersection of segments [a1,b1] (param t) and [a2,b2] (param s).
/// For non-parallel lines t and s are always reported, whether or not they
/// fall inside [0,1]; collinear overlap reports the shared interval.
inline SegmentIntersection segment_intersect(const Point2& a1, const Point2& b1, const Point2& a2,
                                             const Point2& b2) {
    Point2 d1 = b1 - a1, d2 = b2 - a2;
    double l1 = norm(d1), l2 = norm(d2);
    if (l1 <= 0.0 || l2 <= 0.0) {
        throw PlannerError(ErrorKind::degenerate_geometry, "degenerate segment");
    }
    SegmentIntersection out;
    double denom = cross(d1, d2);
    if (std::abs(denom) > 1e-12 * l1 * l2) {
        out.kind = SegmentIntersection::Kind::skew;
        Point2 r = a2 - a1;
        out.t = cross(r, d2) / denom;
        out.s = cross(r, d1) / denom;
        out.point = a1 + d1 * out.t;
        double tol = 1e-12;
        out.within_segments = out.t >= -tol && out.t <= 1.0 + tol && out.s >= -tol &&
                              out.s <= 1.0 + tol;
        return out;
    }
    // Parallel: collinear iff a2 sits on segment 1's line.
    if (std::abs(cross(d1, a2 - a1)) > kGeomEps * l1) {
        out.kind = SegmentIntersection::Kind::parallel;
        return out;
    }
    double ta = dot(a2 - a1, d1) / (l1 * l1);
    double tb = dot(b2 - a1, d1) / (l1 * l1);
    double lo = std::max(0.0, std::min(ta, tb));
    double hi = std::min(1.0, std::max(ta, tb));
    if (lo > hi) {
        out.kind = SegmentIntersection::Kind::collinear_disjoint;
        return out;
    }
    out.kind = SegmentIntersection::Kind::collinear_overlap;
    out.overlap_begin = lo;
    out.overlap_end = hi;
    out.overlap_p0 = a1 + d1 * lo;
    out.overlap_p1 = a1 + d1 * hi;
    return out;
}

// ---------------------------------------------------------------------------
// Region: a set of disjoint polygons-with-holes
// ---------------------------------------------------------------------------

struct Region {
    std::vector<Polygon> components;

    bool empty() const { return components.empty(); }

    double area() const {
        double a = 0.0;
        for (const Polygon& c : components) a += signed_area(c);
        return a;
    }

    BoundingBox bounds() const {
        BoundingBox bb = components.front().bounds();
        for (const Polygon& c : components) bb.expand(c.bounds());
        return bb;
    }

    template <typename Fn>
    void for_each_ring(Fn&& fn) const {
        for (const Polygon& c : components) c.for_each_ring(fn);
    }

    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        for (const Polygon& c : components) c.for_each_edge(fn);
    }

    std::vector<Point2> all_vertices() const {
        std::vector<Point2> out;
        for_each_ring([&](const std::vector<Point2>& ring) {
            out.insert(out.end(), ring.begin(), ring.end());
        });
        return out;
    }
};

inline PointClass point_in_region(const Point2& p, const Region& region, double eps = kGeomEps) {
    for (const Polygon& c : region.components) {
        PointClass pc = point_in_polygon(p, c, eps);
        if (pc != PointClass::outside) return pc;
    }
    return PointClass::outside;
}

/// Index of the component containing p (boundary included), or -1.
inline int region_component_of(const Point2& p, const Region& region, double eps = kGeomEps) {
    for (size_t i = 0; i < region.components.size(); ++i) {
        if (point_in_polygon(p, region.components[i], eps) != PointClass::outside) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

/// Area centroid of a region (holes subtracted).
inline Point2 region_centroid(const Region& region) {
    double a_sum = 0.0, cx = 0.0, cy = 0.0;
    region.for_each_ring([&](const std::vector<Point2>& ring) {
        for (size_t i = 0, n = ring.size(); i < n; ++i) {
            const Point2& p = ring[i];
            const Point2& q = ring[(i + 1) % n];
            double w = p.x * q.y - q.x * p.y;
            a_sum += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
    });
    if (std::abs(a_sum) <= 0.0) {
        throw PlannerError(ErrorKind::degenerate_geometry, "centroid of zero-area region");
    }
    return {cx / (3.0 * a_sum), cy / (3.0 * a_sum)};
}

/// Closest point on any boundary ring of the region.
inline Point2 closest_boundary_point(const Point2& p, const Region& region) {
    double best = std::numeric_limits<double>::infinity();
    Point2 best_point = p;
    region.for_each_edge([&](const Point2& a, const Point2& b) {
        double t = project_onto_segment(p, a, b);
        Point2 q = a + (b - a) * t;
        double d = distance(p, q);
        if (d < best) {
            best = d;
            best_point = q;
        }
    });
    return best_point;
}

inline double polyline_length(const std::vector<Point2>& pts) {
    double len = 0.0;
    for (size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
    return len;
}

}  // namespace sweepcover
