#pragma once

#include <string>
#include <vector>

#include "sweepcover/allocation.hpp"
#include "sweepcover/swaths.hpp"
#include "sweepcover/visibility.hpp"

namespace sweepcover {

enum class LegKind { traversal, transition, detour };

inline const char* to_string(LegKind k) {
    switch (k) {
        case LegKind::traversal: return "traversal";
        case LegKind::transition: return "transition";
        case LegKind::detour: return "detour";
    }
    return "?";
}

struct PlanLeg {
    LegKind kind = LegKind::transition;
    double length = 0.0;
    int swath_id = -1;      // traversal legs only
    int first_point = 0;    // index range into CoveragePlan::waypoints
    int last_point = 0;
    bool depot_leg = false;  // connects the tour to the depot
};

/// Executable path for one robot: depot -> swaths in tour order -> depot,
/// with transitions kept straight when feasible and replaced by visibility
/// graph detours otherwise.
struct CoveragePlan {
    int robot_id = 0;
    std::vector<Point2> waypoints;
    std::vector<PlanLeg> legs;
    std::vector<int> swath_ids;  // traversal order
    std::vector<int> headings;   // +1: a->b, -1: b->a, per entry of swath_ids
};

/// Boustrophedon entry/exit selection: the first swath enters at the endpoint
/// nearer the depot; the heading then flips for every consecutive swath pair
/// except when both segments belong to the same sweep line, where it is kept.
struct TraversalOrder {
    std::vector<int> swath_ids;
    std::vector<int> headings;
};

inline TraversalOrder alternating_waypoints(const SwathSet& swaths, const std::vector<int>& tour,
                                            const Point2& depot, const VisGraph& g) {
    TraversalOrder order;
    order.swath_ids = tour;
    if (tour.empty()) return order;
    const Swath& first = swaths.swaths[tour.front()];
    double da = transition_distance(g, depot, first.a);
    double db = transition_distance(g, depot, first.b);
    int heading = da <= db ? 1 : -1;
    order.headings.push_back(heading);
    for (size_t i = 1; i < tour.size(); ++i) {
        const Swath& prev = swaths.swaths[tour[i - 1]];
        const Swath& cur = swaths.swaths[tour[i]];
        if (cur.line_index != prev.line_index) heading = -heading;
        order.headings.push_back(heading);
    }
    return order;
}

namespace detail {

inline void append_point(CoveragePlan& plan, const Point2& p) {
    if (plan.waypoints.empty() || !near(plan.waypoints.back(), p)) plan.waypoints.push_back(p);
}

inline void append_connection(CoveragePlan& plan, const VisGraph& g, const Point2& from,
                              const Point2& to, bool depot_leg) {
    PathResult path = shortest_path(g, from, to);
    if (path.length <= kGeomEps) return;
    PlanLeg leg;
    leg.kind = path.path.size() > 2 ? LegKind::detour : LegKind::transition;
    leg.length = path.length;
    leg.depot_leg = depot_leg;
    leg.first_point = static_cast<int>(plan.waypoints.size()) - 1;
    for (const Point2& p : path.path) append_point(plan, p);
    leg.last_point = static_cast<int>(plan.waypoints.size()) - 1;
    plan.legs.push_back(leg);
}

}  // namespace detail

/// Turns a traversal order into an executable plan. Swath legs are kept
/// verbatim; every connection is a straight transition when it stays inside
/// the closure of the feasible space and a visibility-graph detour otherwise.
inline CoveragePlan vg_refine(const TraversalOrder& order, const SwathSet& swaths,
                              const VisGraph& g, const Point2& depot, int robot_id) {
    CoveragePlan plan;
    plan.robot_id = robot_id;
    plan.swath_ids = order.swath_ids;
    plan.headings = order.headings;
    detail::append_point(plan, depot);
    if (order.swath_ids.empty()) return plan;
    Point2 position = depot;
    for (size_t i = 0; i < order.swath_ids.size(); ++i) {
        const Swath& s = swaths.swaths[order.swath_ids[i]];
        Point2 entry = order.headings[i] > 0 ? s.a : s.b;
        Point2 exit = order.headings[i] > 0 ? s.b : s.a;
        detail::append_connection(plan, g, position, entry, i == 0);
        PlanLeg leg;
        leg.kind = LegKind::traversal;
        leg.length = s.length;
        leg.swath_id = order.swath_ids[i];
        leg.first_point = static_cast<int>(plan.waypoints.size()) - 1;
        detail::append_point(plan, entry);
        detail::append_point(plan, exit);
        leg.last_point = static_cast<int>(plan.waypoints.size()) - 1;
        plan.legs.push_back(leg);
        position = exit;
    }
    detail::append_connection(plan, g, position, depot, true);
    return plan;
}

/// One plan per robot; together the plans traverse every swath exactly once.
inline std::vector<CoveragePlan> assemble_plans(const Allocation& alloc, const SwathSet& swaths,
                                                const VisGraph& g, const Point2& depot) {
    std::vector<CoveragePlan> plans;
    plans.reserve(alloc.tours.size());
    for (size_t r = 0; r < alloc.tours.size(); ++r) {
        TraversalOrder order = alternating_waypoints(swaths, alloc.tours[r], depot, g);
        plans.push_back(vg_refine(order, swaths, g, depot, static_cast<int>(r)));
    }
    return plans;
}

}  // namespace sweepcover
