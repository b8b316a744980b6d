// Command-line front end: plan a scenario, sweep a parameter axis, or
// validate a scenario file. Exit codes: 0 ok, 2 infeasible workspace,
// 3 unreachable/infeasible allocation, 4 parse or input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sweepcover/pipeline.hpp"
#include "sweepcover/svg.hpp"

namespace fs = std::filesystem;
using namespace sweepcover;

namespace {

struct CommonOptions {
    std::string scenario_path;
    int robots = -1;
    double swath_width = -1.0;
    double buffer_scale = -1.0;
    std::string orientation;
    std::string depot;
    int64_t seed = -1;
    double vg_spacing = -1.0;
    std::string out_dir = "out";
    bool svg = false;
};

void add_override_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--scenario", opt.scenario_path, "Scenario GeoJSON file")->required();
    cmd->add_option("--robots", opt.robots, "Fleet size");
    cmd->add_option("--swath-width", opt.swath_width, "Swath width in meters");
    cmd->add_option("--buffer-scale", opt.buffer_scale,
                    "Headland width as a multiple of the swath width");
    cmd->add_option("--orientation", opt.orientation, "mar|scan|pca|minwidth");
    cmd->add_option("--depot", opt.depot, "Depot as x,y");
    cmd->add_option("--seed", opt.seed, "Solver seed");
    cmd->add_option("--vg-spacing", opt.vg_spacing, "Visibility graph boundary sample spacing");
    cmd->add_option("--out", opt.out_dir, "Output directory");
}

Scenario load_with_overrides(const CommonOptions& opt) {
    Scenario sc = load_scenario(opt.scenario_path);
    if (opt.robots > 0) sc.n_robots = opt.robots;
    if (opt.swath_width > 0.0) sc.swath_width = opt.swath_width;
    if (opt.buffer_scale >= 0.0) sc.buffer_scale = opt.buffer_scale;
    if (!opt.orientation.empty()) {
        sc.orientation.kind = orientation_kind_from_string(opt.orientation);
    }
    if (opt.seed >= 0) sc.seed = static_cast<uint64_t>(opt.seed);
    if (opt.vg_spacing > 0.0) sc.vg_spacing = opt.vg_spacing;
    if (!opt.depot.empty()) {
        double x = 0.0, y = 0.0;
        if (std::sscanf(opt.depot.c_str(), "%lf,%lf", &x, &y) != 2) {
            throw PlannerError(ErrorKind::invalid_argument,
                               "--depot expects x,y (got '" + opt.depot + "')");
        }
        sc.depot = Point2{x, y};
    }
    return sc;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        throw PlannerError(ErrorKind::invalid_argument, "cannot write '" + path.string() + "'");
    }
}

void print_report(const PipelineResult& result) {
    const MetricsReport& m = result.metrics;
    std::printf("swaths: %zu on %d lines, sweep angle %.2f deg\n", result.swaths.swaths.size(),
                result.swaths.n_lines, result.frame.angle() * 180.0 / kPi);
    std::printf("depot: (%.2f, %.2f)\n", result.depot.x, result.depot.y);
    std::printf("%-7s %10s %10s %8s %10s %10s\n", "robot", "length[m]", "swath[m]", "turns",
                "energy[Wh]", "time[s]");
    for (const RobotMetrics& rm : m.robots) {
        std::printf("%-7d %10.1f %10.1f %8d %10.2f %10.1f\n", rm.robot_id, rm.length,
                    rm.swath_length, rm.turns, rm.energy, rm.duration);
    }
    std::printf("fleet: length %.1f m, energy %.2f Wh (coverage-only %.2f Wh), makespan %.1f s\n",
                m.total_length, m.total_energy, m.coverage_energy, m.makespan);
    std::printf("balance ratio %.3f, coverage %.4f, turns %d\n", m.balance_ratio,
                m.coverage_fraction, m.total_turns);
    std::printf("timing:");
    double total = 0.0;
    for (const StageTiming& t : result.timings) {
        std::printf(" %s %.3fs", t.stage.c_str(), t.seconds);
        total += t.seconds;
    }
    std::printf(" | total %.3fs\n", total);
    for (const std::string& w : result.warnings) std::printf("warning: %s\n", w.c_str());
}

int run_plan(const CommonOptions& opt) {
    Scenario sc = load_with_overrides(opt);
    PipelineResult result = run_pipeline(sc);
    fs::path out_dir(opt.out_dir);
    for (const CoveragePlan& plan : result.plans) {
        write_file(out_dir / ("plan_" + std::to_string(plan.robot_id) + ".geojson"),
                   plan_to_geojson(plan).dump(2) + "\n");
        write_file(out_dir / ("waypoints_" + std::to_string(plan.robot_id) + ".csv"),
                   waypoints_to_csv(plan));
    }
    write_file(out_dir / "metrics.json", metrics_to_json(result.metrics).dump(2) + "\n");
    if (opt.svg) {
        write_file(out_dir / "report.svg", render_svg(result.plans, result.workspace));
    }
    print_report(result);
    std::printf("outputs written to %s\n", fs::absolute(out_dir).string().c_str());
    return 0;
}

int run_sweep(const CommonOptions& opt, const std::string& axis_name,
              const std::string& values_csv) {
    Scenario sc = load_with_overrides(opt);
    SweepAxis axis = sweep_axis_from_string(axis_name);
    std::vector<std::string> values;
    std::stringstream ss(values_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(item);
    }
    SweepResult result = sweep(sc, axis, values);
    write_file(fs::path(opt.out_dir) / "sweep.csv", sweep_to_csv(result));
    std::printf("%-28s %12s %12s %10s\n", "run", "energy[Wh]", "length[m]", "delta[%]");
    for (const ComparisonRow& row : result.ranking) {
        std::printf("%-28s %12.2f %12.1f %10.2f\n", row.label.c_str(), row.total_energy,
                    row.total_length, row.energy_delta_pct);
    }
    for (const SweepRow& row : result.rows) {
        if (!row.ok) std::printf("failed: %-20s %s\n", row.label.c_str(), row.error.c_str());
    }
    std::printf("sweep.csv written to %s\n", fs::absolute(opt.out_dir).string().c_str());
    return 0;
}

int run_validate(const CommonOptions& opt) {
    Scenario sc = load_with_overrides(opt);
    std::printf("scenario '%s': roi %zu vertices, %zu obstacles\n", sc.name.c_str(),
                sc.roi.exterior().size(), sc.obstacles.size());
    std::printf("roi area %.1f m^2, swath width %.2f m, buffer scale %.2f, robots %d\n",
                signed_area(sc.roi), sc.swath_width, sc.buffer_scale, sc.n_robots);
    for (const std::string& w : sc.warnings) std::printf("warning: %s\n", w.c_str());
    std::printf("ok\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-robot sweep coverage planner"};
    app.require_subcommand(1);

    CommonOptions plan_opt;
    CLI::App* plan_cmd = app.add_subcommand("plan", "Plan coverage paths for one scenario");
    add_override_flags(plan_cmd, plan_opt);
    plan_cmd->add_flag("--svg", plan_opt.svg, "Also render report.svg");

    CommonOptions sweep_opt;
    std::string axis, values;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run the pipeline over a parameter axis");
    add_override_flags(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--axis", axis, "orientation|buffer|robots")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated axis values")->required();

    CommonOptions validate_opt;
    CLI::App* validate_cmd = app.add_subcommand("validate", "Parse and validate a scenario file");
    add_override_flags(validate_cmd, validate_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(plan_cmd)) return run_plan(plan_opt);
        if (app.got_subcommand(sweep_cmd)) return run_sweep(sweep_opt, axis, values);
        if (app.got_subcommand(validate_cmd)) return run_validate(validate_opt);
    } catch (const PlannerError& e) {
        std::fprintf(stderr, "error [%s%s%s]: %s\n", to_string(e.kind()),
                     e.stage().empty() ? "" : " @ ", e.stage().c_str(), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
