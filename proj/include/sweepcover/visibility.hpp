#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "sweepcover/geometry.hpp"
#include "sweepcover/workspace.hpp"

namespace sweepcover {

namespace detail {

inline std::string point_str(const Point2& p) {
    std::ostringstream os;
    os << "(" << p.x << ", " << p.y << ")";
    return os.str();
}

}  // namespace detail

/// True when the whole segment [p, q] lies inside the closure of the region.
/// A segment leaves the closure only by crossing a boundary edge interior
/// transversally or by passing through a boundary contact point; both cases
/// are caught by the proper-cross rejection plus the gap-midpoint test over
/// all contact parameters.
inline bool segment_in_region(const Region& region, const Point2& p, const Point2& q) {
    double len = distance(p, q);
    if (len <= kGeomEps) return point_in_region(p, region) != PointClass::outside;
    bool crossed = false;
    std::vector<double> touches;
    touches.reserve(8);
    region.for_each_edge([&](const Point2& a, const Point2& b) {
        if (crossed) return;
        if (segments_properly_cross(p, q, a, b)) {
            crossed = true;
            return;
        }
        if (distance_point_segment(a, p, q) <= kGeomEps) {
            touches.push_back(project_onto_segment(a, p, q));
        }
        if (distance_point_segment(b, p, q) <= kGeomEps) {
            touches.push_back(project_onto_segment(b, p, q));
        }
        if (distance_point_segment(p, a, b) <= kGeomEps) touches.push_back(0.0);
        if (distance_point_segment(q, a, b) <= kGeomEps) touches.push_back(1.0);
    });
    if (crossed) return false;
    touches.push_back(0.0);
    touches.push_back(1.0);
    std::sort(touches.begin(), touches.end());
    for (size_t i = 0; i + 1 < touches.size(); ++i) {
        double t0 = touches[i], t1 = touches[i + 1];
        if ((t1 - t0) * len <= kGeomEps) continue;
        Point2 mid = p + (q - p) * (0.5 * (t0 + t1));
        if (point_in_region(mid, region) == PointClass::outside) return false;
    }
    return true;
}

/// Visibility graph over the feasible-space boundary, augmented with points
/// sampled along every ring at `sample_spacing` intervals plus registered
/// query points (swath endpoints, depot). Edges join mutually visible nodes;
/// weights are Euclidean.
class VisGraph {
public:
    struct Edge {
        int to;
        double weight;
    };

    std::vector<Point2> nodes;
    std::vector<std::vector<Edge>> adjacency;
    std::vector<int> graph_component;   // connected-component label per node
    std::vector<int> region_component;  // feasible-space component per node
    double sample_spacing = 0.0;
    Region region;  // owned copy of the feasible space

    /// Index of a node within eps of p, or -1.
    int find_node(const Point2& p, double eps = kGeomEps) const {
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (near(nodes[i], p, eps)) return static_cast<int>(i);
        }
        return -1;
    }

    mutable std::map<std::pair<int, int>, double> distance_memo;  // not thread-safe
};

inline VisGraph build_graph(const Workspace& ws, const std::vector<Point2>& extra_nodes,
                            double spacing) {
    if (!(spacing > 0.0)) {
        throw PlannerError(ErrorKind::invalid_argument, "sample spacing must be > 0");
    }
    if (ws.feasible.empty()) {
        throw PlannerError(ErrorKind::infeasible_workspace, "workspace has no feasible area");
    }
    VisGraph g;
    g.sample_spacing = spacing;
    g.region = ws.feasible;

    for (size_t ci = 0; ci < g.region.components.size(); ++ci) {
        g.region.components[ci].for_each_ring([&](const std::vector<Point2>& ring) {
            size_t first = g.nodes.size();
            for (const Point2& p : ring) {
                g.nodes.push_back(p);
                g.region_component.push_back(static_cast<int>(ci));
            }
            // Uniformly sampled intermediate points along the ring.
            double walked = 0.0, next_sample = spacing;
            for (size_t i = 0, n = ring.size(); i < n; ++i) {
                const Point2& a = ring[i];
                const Point2& b = ring[(i + 1) % n];
                double seg = distance(a, b);
                while (next_sample < walked + seg - kGeomEps) {
                    double t = (next_sample - walked) / seg;
                    Point2 p = a + (b - a) * t;
                    bool duplicate = false;
                    for (size_t j = first; j < g.nodes.size() && !duplicate; ++j) {
                        duplicate = near(g.nodes[j], p, 1e-6);
                    }
                    if (!duplicate) {
                        g.nodes.push_back(p);
                        g.region_component.push_back(static_cast<int>(ci));
                    }
                    next_sample += spacing;
                }
                walked += seg;
            }
        });
    }
    for (const Point2& p : extra_nodes) {
        int ci = region_component_of(p, g.region);
        if (ci < 0) {
            throw PlannerError(ErrorKind::infeasible_node,
                               "node " + detail::point_str(p) + " lies outside the feasible space");
        }
        if (g.find_node(p) >= 0) continue;
        g.nodes.push_back(p);
        g.region_component.push_back(ci);
    }

    size_t n = g.nodes.size();
    g.adjacency.assign(n, {});
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (g.region_component[i] != g.region_component[j]) continue;
            if (!segment_in_region(g.region, g.nodes[i], g.nodes[j])) continue;
            double w = distance(g.nodes[i], g.nodes[j]);
            g.adjacency[i].push_back({static_cast<int>(j), w});
            g.adjacency[j].push_back({static_cast<int>(i), w});
        }
    }

    // Connected-component labels for unreachable diagnostics.
    g.graph_component.assign(n, -1);
    int label = 0;
    std::vector<int> stack;
    for (size_t s = 0; s < n; ++s) {
        if (g.graph_component[s] >= 0) continue;
        stack.push_back(static_cast<int>(s));
        g.graph_component[s] = label;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const VisGraph::Edge& e : g.adjacency[u]) {
                if (g.graph_component[e.to] < 0) {
                    g.graph_component[e.to] = label;
                    stack.push_back(e.to);
                }
            }
        }
        ++label;
    }
    return g;
}

/// Dijkstra distances from one node to all nodes; unreached entries are +inf.
inline std::vector<double> shortest_distances_from(const VisGraph& g, int source,
                                                   std::vector<int>* parent = nullptr) {
    size_t n = g.nodes.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    if (parent) parent->assign(n, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const VisGraph::Edge& e : g.adjacency[u]) {
            double nd = d + e.weight;
            if (nd < dist[e.to]) {
                dist[e.to] = nd;
                if (parent) (*parent)[e.to] = u;
                heap.push({nd, e.to});
            }
        }
    }
    return dist;
}

struct PathResult {
    std::vector<Point2> path;
    double length = 0.0;
};

/// Shortest collision-free path between two points in the closure of the
/// feasible space. Straight line when it fits, graph search otherwise
/// (endpoints must then be registered nodes).
inline PathResult shortest_path(const VisGraph& g, const Point2& a, const Point2& b) {
    if (near(a, b)) return {{a}, 0.0};
    if (segment_in_region(g.region, a, b)) return {{a, b}, distance(a, b)};
    int ia = g.find_node(a), ib = g.find_node(b);
    if (ia < 0 || ib < 0) {
        throw PlannerError(ErrorKind::invalid_argument,
                           "query point " + detail::point_str(ia < 0 ? a : b) +
                               " is not registered in the visibility graph");
    }
    if (g.graph_component[ia] != g.graph_component[ib]) {
        throw PlannerError(ErrorKind::unreachable,
                           "no collision-free path: " + detail::point_str(a) + " (component " +
                               std::to_string(g.region_component[ia]) + ") and " +
                               detail::point_str(b) + " (component " +
                               std::to_string(g.region_component[ib]) +
                               ") are not connected");
    }
    std::vector<int> parent;
    std::vector<double> dist = shortest_distances_from(g, ia, &parent);
    if (!std::isfinite(dist[ib])) {
        throw PlannerError(ErrorKind::unreachable, "no collision-free path between " +
                                                       detail::point_str(a) + " and " +
                                                       detail::point_str(b));
    }
    std::vector<Point2> rev;
    for (int u = ib; u >= 0; u = parent[u]) {
        rev.push_back(g.nodes[u]);
        if (u == ia) break;
    }
    std::reverse(rev.begin(), rev.end());
    return {std::move(rev), dist[ib]};
}

/// Length of shortest_path, memoized per unordered registered-node pair.
inline double transition_distance(const VisGraph& g, const Point2& a, const Point2& b) {
    int ia = g.find_node(a), ib = g.find_node(b);
    if (ia >= 0 && ib >= 0) {
        auto key = std::minmax(ia, ib);
        auto it = g.distance_memo.find(key);
        if (it != g.distance_memo.end()) return it->second;
        double len = shortest_path(g, a, b).length;
        g.distance_memo.emplace(key, len);
        return len;
    }
    return shortest_path(g, a, b).length;
}

}  // namespace sweepcover
