#pragma once

// Independent reference implementations the tests check the library against.
// Everything here deliberately avoids the library's computation paths: the
// point classifiers, hulls and searches below are re-implemented from
// scratch.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <vector>

#include "sweepcover/geometry.hpp"

namespace sweepcover::oracle {

/// Shoelace area of one ring, re-implemented.
inline double shoelace(const std::vector<Point2>& ring) {
    double twice = 0.0;
    size_t n = ring.size();
    for (size_t i = 0; i < n; ++i) {
        size_t j = (i + 1) % n;
        twice += ring[i].x * ring[j].y - ring[j].x * ring[i].y;
    }
    return 0.5 * twice;
}

/// O(n^3) convex hull: a directed pair (i, j) is a hull edge iff every other
/// point lies strictly left of it (collinear points folded in).
inline std::vector<Point2> brute_force_hull_vertices(const std::vector<Point2>& pts) {
    size_t n = pts.size();
    std::set<size_t> hull_ids;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            bool all_left = true;
            bool strict = false;
            for (size_t k = 0; k < n && all_left; ++k) {
                if (k == i || k == j) continue;
                double c = (pts[j].x - pts[i].x) * (pts[k].y - pts[i].y) -
                           (pts[j].y - pts[i].y) * (pts[k].x - pts[i].x);
                if (c < 0.0) all_left = false;
                if (c > 0.0) strict = true;
            }
            if (all_left && strict) {
                hull_ids.insert(i);
                hull_ids.insert(j);
            }
        }
    }
    std::vector<Point2> out;
    for (size_t id : hull_ids) out.push_back(pts[id]);
    return out;
}

/// Bounding-rectangle area of the points at sweep angle `angle`.
inline double rect_area_at_angle(const std::vector<Point2>& pts, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    double umin = std::numeric_limits<double>::infinity(), umax = -umin;
    double vmin = umin, vmax = -umin;
    for (const Point2& p : pts) {
        double u = c * p.x + s * p.y;
        double v = -s * p.x + c * p.y;
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    return (umax - umin) * (vmax - vmin);
}

inline double projected_height_at_angle(const std::vector<Point2>& pts, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    for (const Point2& p : pts) {
        double v = -s * p.x + c * p.y;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    return vmax - vmin;
}

/// Exhaustive rectangle-area scan; returns the minimum area found.
inline double min_rect_area_by_scan(const std::vector<Point2>& pts, double step_deg) {
    double best = std::numeric_limits<double>::infinity();
    double step = step_deg * kPi / 180.0;
    for (double a = 0.0; a < kPi / 2.0; a += step) {
        best = std::min(best, rect_area_at_angle(pts, a));
    }
    return best;
}

/// Closest approach between a point moving along segment 1 and segment 2,
/// located by ternary search on the (convex) distance profile.
inline Point2 closest_approach_on_segment(const Point2& a1, const Point2& b1, const Point2& a2,
                                          const Point2& b2) {
    auto dist_at = [&](double t) {
        Point2 p = a1 + (b1 - a1) * t;
        // point-to-segment distance, re-implemented
        Point2 d = b2 - a2;
        double len2 = d.x * d.x + d.y * d.y;
        double u = len2 > 0.0 ? ((p.x - a2.x) * d.x + (p.y - a2.y) * d.y) / len2 : 0.0;
        u = std::clamp(u, 0.0, 1.0);
        Point2 q = a2 + d * u;
        return std::hypot(p.x - q.x, p.y - q.y);
    };
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (dist_at(m1) < dist_at(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    return a1 + (b1 - a1) * (0.5 * (lo + hi));
}

// ---------------------------------------------------------------------------
// Independent region membership (used by the offset and path oracles)
// ---------------------------------------------------------------------------

struct RingSet {
    // Every ring of a polygon-with-holes set; membership = even-odd over all.
    std::vector<std::vector<Point2>> rings;
};

inline double ringset_boundary_distance(const RingSet& rs, const Point2& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ring : rs.rings) {
        for (size_t i = 0, n = ring.size(); i < n; ++i) {
            const Point2& a = ring[i];
            const Point2& b = ring[(i + 1) % n];
            Point2 d = b - a;
            double len2 = d.x * d.x + d.y * d.y;
            double t = len2 > 0.0 ? ((p.x - a.x) * d.x + (p.y - a.y) * d.y) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            Point2 q = a + d * t;
            best = std::min(best, std::hypot(p.x - q.x, p.y - q.y));
        }
    }
    return best;
}

inline bool ringset_contains(const RingSet& rs, const Point2& p, double boundary_eps = 0.0) {
    if (boundary_eps > 0.0 && ringset_boundary_distance(rs, p) <= boundary_eps) return true;
    int crossings = 0;
    for (const auto& ring : rs.rings) {
        for (size_t i = 0, n = ring.size(); i < n; ++i) {
            const Point2& a = ring[i];
            const Point2& b = ring[(i + 1) % n];
            if ((a.y > p.y) == (b.y > p.y)) continue;
            double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_at) ++crossings;
        }
    }
    return crossings % 2 == 1;
}

/// Signed distance test for erosion/dilation oracles: distance from p to the
/// boundary of the original polygon, positive meaning "inside".
inline double signed_boundary_distance(const RingSet& rs, const Point2& p) {
    double d = ringset_boundary_distance(rs, p);
    return ringset_contains(rs, p) ? d : -d;
}

// ---------------------------------------------------------------------------
// Grid-based shortest path (8-connected Dijkstra + string pulling)
// ---------------------------------------------------------------------------

struct GridPathResult {
    bool reached = false;
    double length = 0.0;
    std::vector<Point2> path;
};

/// Fine-grid shortest path inside a ring set. Cells are free when their
/// center is inside (boundary band included); the raw 8-connected path is
/// shortened by greedy line-of-sight jumps sampled at sub-cell resolution.
inline GridPathResult grid_shortest_path(const RingSet& rs, const Point2& start,
                                         const Point2& goal, double cell) {
    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_y;
    for (const auto& ring : rs.rings) {
        for (const Point2& p : ring) {
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
    }
    int nx = static_cast<int>(std::ceil((max_x - min_x) / cell)) + 2;
    int ny = static_cast<int>(std::ceil((max_y - min_y) / cell)) + 2;
    auto cell_of = [&](const Point2& p) {
        int i = static_cast<int>(std::floor((p.x - min_x) / cell)) + 1;
        int j = static_cast<int>(std::floor((p.y - min_y) / cell)) + 1;
        return std::pair<int, int>(std::clamp(i, 0, nx - 1), std::clamp(j, 0, ny - 1));
    };
    auto center_of = [&](int i, int j) {
        return Point2{min_x + (i - 0.5) * cell, min_y + (j - 0.5) * cell};
    };
    std::vector<uint8_t> free_cell(static_cast<size_t>(nx) * ny, 0);
    double band = 0.51 * cell * std::sqrt(2.0);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            free_cell[static_cast<size_t>(j) * nx + i] =
                ringset_contains(rs, center_of(i, j), band) ? 1 : 0;
        }
    }
    auto [si, sj] = cell_of(start);
    auto [gi, gj] = cell_of(goal);
    free_cell[static_cast<size_t>(sj) * nx + si] = 1;
    free_cell[static_cast<size_t>(gj) * nx + gi] = 1;

    std::vector<double> dist(static_cast<size_t>(nx) * ny,
                             std::numeric_limits<double>::infinity());
    std::vector<int> parent(static_cast<size_t>(nx) * ny, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    int start_id = sj * nx + si, goal_id = gj * nx + gi;
    dist[start_id] = 0.0;
    heap.push({0.0, start_id});
    const int di[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    const int dj[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    while (!heap.empty()) {
        auto [d, id] = heap.top();
        heap.pop();
        if (d > dist[id]) continue;
        if (id == goal_id) break;
        int i = id % nx, j = id / nx;
        for (int k = 0; k < 8; ++k) {
            int ni = i + di[k], nj = j + dj[k];
            if (ni < 0 || nj < 0 || ni >= nx || nj >= ny) continue;
            int nid = nj * nx + ni;
            if (!free_cell[nid]) continue;
            double nd = d + (k < 4 ? cell : cell * std::sqrt(2.0));
            if (nd < dist[nid]) {
                dist[nid] = nd;
                parent[nid] = id;
                heap.push({nd, nid});
            }
        }
    }
    GridPathResult out;
    if (!std::isfinite(dist[goal_id])) return out;
    std::vector<Point2> raw{goal};
    for (int id = goal_id; id != start_id; id = parent[id]) {
        raw.push_back(center_of(id % nx, id / nx));
    }
    raw.push_back(start);
    std::reverse(raw.begin(), raw.end());

    // Exact-crossing line of sight plus sampled containment. Waypoints from
    // the free-cell band may sit up to `band` outside the closed region, so
    // samples near the segment ends get the band tolerance; interior samples
    // are strict, which keeps real cut-throughs rejected.
    auto strictly_crosses = [](const Point2& a, const Point2& b, const Point2& c,
                               const Point2& d) {
        auto side = [](const Point2& p, const Point2& q, const Point2& r) {
            return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        };
        double o1 = side(a, b, c), o2 = side(a, b, d);
        double o3 = side(c, d, a), o4 = side(c, d, b);
        return ((o1 > 1e-12 && o2 < -1e-12) || (o1 < -1e-12 && o2 > 1e-12)) &&
               ((o3 > 1e-12 && o4 < -1e-12) || (o3 < -1e-12 && o4 > 1e-12));
    };
    auto line_of_sight = [&](const Point2& a, const Point2& b) {
        for (const auto& ring : rs.rings) {
            for (size_t i = 0, n = ring.size(); i < n; ++i) {
                if (strictly_crosses(a, b, ring[i], ring[(i + 1) % n])) return false;
            }
        }
        double len = std::hypot(b.x - a.x, b.y - a.y);
        int steps = std::max(2, static_cast<int>(std::ceil(len / (0.25 * cell))));
        for (int s = 0; s <= steps; ++s) {
            double arc = len * s / steps;
            double eps = std::min(arc, len - arc) <= 2.0 * band ? band + 1e-6 : 1e-6;
            Point2 p = a + (b - a) * (static_cast<double>(s) / steps);
            if (!ringset_contains(rs, p, eps)) return false;
        }
        return true;
    };

    // Optimal-subsequence shortcut: DP over path indices with line-of-sight
    // edges. Unlike greedy pulling this cannot overshoot a corner funnel.
    // Adjacent grid cells (and only those) connect without a visibility
    // check; their segments stay within the free-cell band.
    auto pull = [&](const std::vector<Point2>& pts) {
        size_t n = pts.size();
        std::vector<double> best(n, std::numeric_limits<double>::infinity());
        std::vector<int> from(n, -1);
        best[0] = 0.0;
        for (size_t j = 1; j < n; ++j) {
            for (size_t i = 0; i < j; ++i) {
                if (!std::isfinite(best[i])) continue;
                double leg = std::hypot(pts[j].x - pts[i].x, pts[j].y - pts[i].y);
                if (best[i] + leg >= best[j]) continue;
                bool adjacent = i + 1 == j && leg <= 1.6 * cell;
                if (!adjacent && !line_of_sight(pts[i], pts[j])) continue;
                best[j] = best[i] + leg;
                from[j] = static_cast<int>(i);
            }
        }
        std::vector<Point2> pulled;
        if (!std::isfinite(best[n - 1])) return pulled;  // disconnected at this thinning
        for (int at = static_cast<int>(n) - 1; at >= 0; at = from[at]) {
            pulled.push_back(pts[at]);
            if (at == 0) break;
        }
        std::reverse(pulled.begin(), pulled.end());
        return pulled;
    };
    // Thin the raw chain so the O(n^2) shortcut stays cheap, then interleave
    // the boundary vertices adjacent to the corridor: the taut path stops at
    // those, not at cell centers, and with them in the sequence the shortcut
    // DP can choose them directly. The full chain is kept as a fallback in
    // case thinning disconnects the DP.
    std::vector<Point2> raw_full = raw;
    if (raw.size() > 120) {
        std::vector<Point2> thin;
        size_t stride = raw.size() / 100 + 1;
        for (size_t i = 0; i < raw.size(); i += stride) thin.push_back(raw[i]);
        if (!(thin.back().x == raw.back().x && thin.back().y == raw.back().y)) {
            thin.push_back(raw.back());
        }
        raw = std::move(thin);
    }
    {
        std::vector<Point2> all_vertices;
        for (const auto& ring : rs.rings) {
            all_vertices.insert(all_vertices.end(), ring.begin(), ring.end());
        }
        std::vector<char> taken(all_vertices.size(), 0);
        std::vector<Point2> enriched;
        enriched.reserve(raw.size() * 2);
        for (size_t i = 0; i < raw.size(); ++i) {
            enriched.push_back(raw[i]);
            if (i + 1 == raw.size()) break;  // the goal must stay the DP target
            for (size_t v = 0; v < all_vertices.size(); ++v) {
                if (taken[v]) continue;
                if (std::hypot(all_vertices[v].x - raw[i].x, all_vertices[v].y - raw[i].y) <=
                    1.0) {
                    taken[v] = 1;
                    enriched.push_back(all_vertices[v]);
                }
            }
        }
        raw = std::move(enriched);
    }
    // Shortcutting alone stops at cell centers while the taut path hugs
    // boundary vertices. Relocate each interior kink to the boundary vertex
    // minimizing the local length; kinks left outside the closed region by
    // the free-cell band must move to a feasible spot even at a length cost.
    auto tighten = [&](std::vector<Point2> pts) {
        for (int round = 0; round < 25; ++round) {
            std::vector<Point2> shortened = pull(pts);
            if (shortened.empty()) return shortened;
            pts = std::move(shortened);
            bool moved = false;
            for (size_t i = 1; i + 1 < pts.size(); ++i) {
                const Point2& p = pts[i - 1];
                const Point2& r = pts[i + 1];
                auto via = [&](const Point2& v) {
                    return std::hypot(v.x - p.x, v.y - p.y) + std::hypot(r.x - v.x, r.y - v.y);
                };
                bool must_move = !ringset_contains(rs, pts[i], 1e-6);
                Point2 best = pts[i];
                double best_len = must_move ? std::numeric_limits<double>::infinity()
                                            : via(pts[i]);
                for (const auto& ring : rs.rings) {
                    for (const Point2& v : ring) {
                        if (via(v) < best_len - 1e-12 && line_of_sight(p, v) &&
                            line_of_sight(v, r)) {
                            best_len = via(v);
                            best = v;
                        }
                    }
                }
                if (best.x != pts[i].x || best.y != pts[i].y) {
                    pts[i] = best;
                    moved = true;
                }
            }
            if (!moved) break;
        }
        return pts;
    };
    std::vector<Point2> path = tighten(raw);
    if (path.empty()) path = tighten(raw_full);
    if (path.empty()) path = raw_full;
    out.reached = true;
    out.path = std::move(path);
    for (size_t i = 1; i < out.path.size(); ++i) {
        out.length += std::hypot(out.path[i].x - out.path[i - 1].x,
                                 out.path[i].y - out.path[i - 1].y);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Held-Karp TSP (single robot, depot round trip)
// ---------------------------------------------------------------------------

/// Exact depot->all-swaths->depot optimum by subset DP over transition costs;
/// swath lengths are added as a constant.
inline double held_karp_tsp(const std::vector<std::vector<double>>& cost,
                            const std::vector<double>& depot_cost,
                            const std::vector<double>& lengths) {
    int n = static_cast<int>(depot_cost.size());
    size_t full = size_t(1) << n;
    std::vector<std::vector<double>> dp(full,
                                        std::vector<double>(n, std::numeric_limits<double>::infinity()));
    for (int i = 0; i < n; ++i) dp[size_t(1) << i][i] = depot_cost[i];
    for (size_t mask = 1; mask < full; ++mask) {
        for (int last = 0; last < n; ++last) {
            if (!(mask & (size_t(1) << last))) continue;
            double d = dp[mask][last];
            if (!std::isfinite(d)) continue;
            for (int next = 0; next < n; ++next) {
                if (mask & (size_t(1) << next)) continue;
                size_t nmask = mask | (size_t(1) << next);
                double nd = d + cost[last][next];
                if (nd < dp[nmask][next]) dp[nmask][next] = nd;
            }
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (int last = 0; last < n; ++last) {
        best = std::min(best, dp[full - 1][last] + depot_cost[last]);
    }
    for (double len : lengths) best += len;
    return best;
}

}  // namespace sweepcover::oracle
