#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "sweepcover/allocation.hpp"
#include "sweepcover/metrics.hpp"
#include "sweepcover/orientation.hpp"
#include "sweepcover/routing.hpp"
#include "sweepcover/scenario.hpp"
#include "sweepcover/swaths.hpp"
#include "sweepcover/visibility.hpp"
#include "sweepcover/workspace.hpp"

namespace sweepcover {

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct PipelineResult {
    Workspace workspace;
    SweepFrame frame;
    SwathSet swaths;
    Allocation allocation;
    std::vector<CoveragePlan> plans;
    MetricsReport metrics;
    Point2 depot;
    std::vector<StageTiming> timings;
    std::vector<std::string> warnings;
};

/// Depot default: the feasible-space centroid, projected to the nearest
/// boundary point when the centroid itself is infeasible (nonconvex regions).
inline Point2 resolve_depot(const Workspace& ws, const std::optional<Point2>& requested) {
    if (requested.has_value()) return *requested;
    Point2 c = region_centroid(ws.feasible);
    if (point_in_region(c, ws.feasible) != PointClass::outside) return c;
    return closest_boundary_point(c, ws.feasible);
}

namespace detail {

template <typename Fn>
auto timed_stage(std::vector<StageTiming>& timings, const std::string& name, Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    try {
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            timings.push_back({name, std::chrono::duration<double>(
                                         std::chrono::steady_clock::now() - start)
                                         .count()});
        } else {
            auto result = fn();
            timings.push_back({name, std::chrono::duration<double>(
                                         std::chrono::steady_clock::now() - start)
                                         .count()});
            return result;
        }
    } catch (PlannerError& e) {
        if (e.stage().empty()) e.set_stage(name);
        throw;
    }
}

}  // namespace detail

/// End-to-end run: workspace -> orientation -> swaths -> visibility graph ->
/// allocation -> routing -> metrics, with per-stage wall-clock timing.
/// Deterministic for a fixed scenario + seed.
inline PipelineResult run_pipeline(const Scenario& sc) {
    validate_scenario(sc);
    std::vector<StageTiming> timings;
    double headland = sc.buffer_scale * sc.swath_width;

    Workspace ws = detail::timed_stage(timings, "workspace", [&] {
        Workspace built = build_feasible(sc.roi, sc.obstacles, headland);
        built.buffer_scale = sc.buffer_scale;
        return built;
    });
    SweepFrame frame = detail::timed_stage(timings, "orientation",
                                           [&] { return compute_orientation(sc.roi, sc.orientation); });
    SwathSet swaths = detail::timed_stage(timings, "swaths",
                                          [&] { return generate_swaths(ws, frame, sc.swath_width); });
    Point2 depot = resolve_depot(ws, sc.depot);
    double spacing = sc.vg_spacing > 0.0 ? sc.vg_spacing : sc.swath_width;
    VisGraph graph = detail::timed_stage(timings, "visibility_graph", [&] {
        std::vector<Point2> nodes;
        nodes.reserve(2 * swaths.swaths.size() + 1);
        for (const Swath& s : swaths.swaths) {
            nodes.push_back(s.a);
            nodes.push_back(s.b);
        }
        nodes.push_back(depot);
        return build_graph(ws, nodes, spacing);
    });
    Allocation allocation = detail::timed_stage(timings, "allocation", [&] {
        AllocationInstance inst = build_cost_matrix(swaths, graph, depot, sc.n_robots);
        return solve_mtsp(inst, sc.seed);
    });
    std::vector<CoveragePlan> plans = detail::timed_stage(timings, "routing", [&] {
        return assemble_plans(allocation, swaths, graph, depot);
    });
    MetricsReport metrics = detail::timed_stage(timings, "metrics", [&] {
        return evaluate(plans, ws, swaths, sc.energy);
    });

    PipelineResult result{std::move(ws),    frame,
                          std::move(swaths), std::move(allocation),
                          std::move(plans),  std::move(metrics),
                          depot,             std::move(timings),
                          sc.warnings};
    for (const std::string& w : result.allocation.warnings) result.warnings.push_back(w);
    return result;
}

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

enum class SweepAxis { orientation, buffer, robots };

inline SweepAxis sweep_axis_from_string(const std::string& s) {
    if (s == "orientation") return SweepAxis::orientation;
    if (s == "buffer") return SweepAxis::buffer;
    if (s == "robots") return SweepAxis::robots;
    throw PlannerError(ErrorKind::invalid_argument,
                       "unknown sweep axis '" + s + "' (orientation|buffer|robots)");
}

struct SweepRow {
    std::string label;
    bool ok = false;
    std::string error;
    MetricsReport report;
    double planning_seconds = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<ComparisonRow> ranking;  // over the successful rows
};

/// Runs the pipeline once per axis value; per-run failures are recorded and
/// the sweep continues.
inline SweepResult sweep(const Scenario& base, SweepAxis axis,
                         const std::vector<std::string>& values) {
    if (values.empty()) {
        throw PlannerError(ErrorKind::invalid_argument, "sweep needs at least one value");
    }
    SweepResult result;
    std::vector<LabeledReport> succeeded;
    for (const std::string& value : values) {
        Scenario sc = base;
        SweepRow row;
        try {
            switch (axis) {
                case SweepAxis::orientation:
                    sc.orientation.kind = orientation_kind_from_string(value);
                    row.label = "orientation=" + value;
                    break;
                case SweepAxis::buffer:
                    sc.buffer_scale = std::stod(value);
                    row.label = "buffer_scale=" + value;
                    break;
                case SweepAxis::robots:
                    sc.n_robots = std::stoi(value);
                    row.label = "robots=" + value;
                    break;
            }
            auto start = std::chrono::steady_clock::now();
            PipelineResult run = run_pipeline(sc);
            row.planning_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            row.ok = true;
            row.report = run.metrics;
            succeeded.push_back({row.label, row.report});
        } catch (const std::exception& e) {
            if (row.label.empty()) row.label = value;
            row.error = e.what();
        }
        result.rows.push_back(std::move(row));
    }
    result.ranking = compare_runs(succeeded);
    return result;
}

inline std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream os;
    os.precision(17);
    os << "label,ok,total_energy_wh,total_length_m,coverage_energy_wh,coverage_length_m,"
          "makespan_s,total_turns,balance_ratio,coverage_fraction,planning_s,error\n";
    for (const SweepRow& row : result.rows) {
        os << row.label << "," << (row.ok ? 1 : 0) << ",";
        if (row.ok) {
            const MetricsReport& m = row.report;
            os << m.total_energy << "," << m.total_length << "," << m.coverage_energy << ","
               << m.coverage_length << "," << m.makespan << "," << m.total_turns << ","
               << m.balance_ratio << "," << m.coverage_fraction << "," << row.planning_seconds
               << ",";
        } else {
            os << ",,,,,,,," << row.planning_seconds << ",";
        }
        std::string err = row.error;
        for (char& c : err) {
            if (c == ',' || c == '\n') c = ';';
        }
        os << err << "\n";
    }
    return os.str();
}

}  // namespace sweepcover
