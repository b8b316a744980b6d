#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sweepcover/raster.hpp"
#include "sweepcover/routing.hpp"
#include "sweepcover/swaths.hpp"
#include "sweepcover/workspace.hpp"

namespace sweepcover {

/// Surrogate energy model: cruise power over path time plus a fixed penalty
/// per turn event.
struct EnergyModel {
    double cruise_speed = 5.0;    // m/s
    double cruise_power = 350.0;  // W
    double turn_penalty = 0.2;    // Wh per turn event
    double turn_time = 3.0;       // s per turn event
};

inline constexpr double kTurnThresholdRad = 5.0 * kPi / 180.0;

struct RobotMetrics {
    int robot_id = 0;
    double length = 0.0;             // m, full plan incl. depot legs
    double swath_length = 0.0;       // m
    double transition_length = 0.0;  // m, non-traversal legs incl. depot legs
    double depot_leg_length = 0.0;   // m
    int turns = 0;
    double energy = 0.0;           // Wh
    double coverage_energy = 0.0;  // Wh, depot legs excluded
    double duration = 0.0;         // s
};

struct MetricsReport {
    std::vector<RobotMetrics> robots;
    double total_length = 0.0;     // m
    double total_energy = 0.0;     // Wh, E_t
    double coverage_length = 0.0;  // m, depot legs excluded
    double coverage_energy = 0.0;  // Wh, depot legs excluded
    int total_turns = 0;
    double makespan = 0.0;       // s
    double balance_ratio = 0.0;  // max length / mean length
    double coverage_fraction = 0.0;
};

namespace detail {

/// Turn events over the coverage sub-polyline (first swath entry to last
/// swath exit): heading changes above the 5 degree threshold at interior
/// vertices. Depot approach/return junctions are not coverage turns.
inline int count_turns(const CoveragePlan& plan) {
    int first = -1, last = -1;
    for (const PlanLeg& leg : plan.legs) {
        if (leg.kind != LegKind::traversal) continue;
        if (first < 0) first = leg.first_point;
        last = leg.last_point;
    }
    if (first < 0) return 0;
    int turns = 0;
    for (int i = first + 1; i < last; ++i) {
        Point2 in = plan.waypoints[i] - plan.waypoints[i - 1];
        Point2 out = plan.waypoints[i + 1] - plan.waypoints[i];
        double li = norm(in), lo = norm(out);
        if (li <= kGeomEps || lo <= kGeomEps) continue;
        double c = std::clamp(dot(in, out) / (li * lo), -1.0, 1.0);
        if (std::acos(c) > kTurnThresholdRad) ++turns;
    }
    return turns;
}

}  // namespace detail

inline MetricsReport evaluate(const std::vector<CoveragePlan>& plans, const Workspace& ws,
                              const SwathSet& swaths, const EnergyModel& model) {
    MetricsReport report;
    std::vector<std::pair<Point2, Point2>> traversed;
    for (const CoveragePlan& plan : plans) {
        RobotMetrics rm;
        rm.robot_id = plan.robot_id;
        for (const PlanLeg& leg : plan.legs) {
            rm.length += leg.length;
            if (leg.kind == LegKind::traversal) {
                rm.swath_length += leg.length;
                traversed.push_back({plan.waypoints[leg.first_point],
                                     plan.waypoints[leg.last_point]});
            } else {
                rm.transition_length += leg.length;
                if (leg.depot_leg) rm.depot_leg_length += leg.length;
            }
        }
        rm.turns = detail::count_turns(plan);
        double hours = rm.length / model.cruise_speed / 3600.0;
        rm.energy = model.cruise_power * hours + rm.turns * model.turn_penalty;
        double coverage_hours = (rm.length - rm.depot_leg_length) / model.cruise_speed / 3600.0;
        rm.coverage_energy = model.cruise_power * coverage_hours + rm.turns * model.turn_penalty;
        rm.duration = rm.length / model.cruise_speed + rm.turns * model.turn_time;
        report.robots.push_back(rm);
    }
    double length_sum = 0.0;
    double max_length = 0.0;
    for (const RobotMetrics& rm : report.robots) {
        report.total_length += rm.length;
        report.total_energy += rm.energy;
        report.coverage_length += rm.length - rm.depot_leg_length;
        report.coverage_energy += rm.coverage_energy;
        report.total_turns += rm.turns;
        report.makespan = std::max(report.makespan, rm.duration);
        length_sum += rm.length;
        max_length = std::max(max_length, rm.length);
    }
    if (length_sum > 0.0 && !report.robots.empty()) {
        report.balance_ratio = max_length / (length_sum / report.robots.size());
    }
    if (!traversed.empty()) {
        double w = swaths.width;
        Region target;
        for (const Polygon& c : ws.feasible.components) {
            Region eroded = offset_inward(c, 0.05 * w);
            for (Polygon& e : eroded.components) target.components.push_back(std::move(e));
        }
        if (!target.empty()) {
            report.coverage_fraction = covered_fraction(target, traversed, 0.5 * w, w / 20.0);
        }
    }
    return report;
}

/// One labeled pipeline outcome, for run-to-run comparisons.
struct LabeledReport {
    std::string label;
    MetricsReport report;
};

struct ComparisonRow {
    std::string label;
    double total_energy = 0.0;
    double total_length = 0.0;
    double coverage_energy = 0.0;
    double makespan = 0.0;
    double energy_delta_pct = 0.0;  // vs the best (lowest-energy) run
};

/// Ranks runs by total energy, deltas in percent against the winner.
inline std::vector<ComparisonRow> compare_runs(const std::vector<LabeledReport>& reports) {
    std::vector<ComparisonRow> rows;
    rows.reserve(reports.size());
    for (const LabeledReport& lr : reports) {
        rows.push_back({lr.label, lr.report.total_energy, lr.report.total_length,
                        lr.report.coverage_energy, lr.report.makespan, 0.0});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        return a.total_energy < b.total_energy;
    });
    if (!rows.empty() && rows.front().total_energy > 0.0) {
        double best = rows.front().total_energy;
        for (ComparisonRow& row : rows) {
            row.energy_delta_pct = 100.0 * (row.total_energy - best) / best;
        }
    }
    return rows;
}

}  // namespace sweepcover
