#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sweepcover/geometry.hpp"
#include "sweepcover/metrics.hpp"
#include "sweepcover/orientation.hpp"
#include "sweepcover/routing.hpp"

namespace sweepcover {

/// A fully specified planning problem: geometry from a GeoJSON
/// FeatureCollection (`role=roi` / `role=nfz` features) plus numeric
/// parameters from a `<stem>.config.json` sidecar and CLI overrides.
struct Scenario {
    std::string name;
    Polygon roi;
    std::vector<Polygon> obstacles;
    double swath_width = 0.0;
    double buffer_scale = 1.0;
    int n_robots = 3;
    std::optional<Point2> depot;
    OrientationStrategy orientation;
    uint64_t seed = 0;
    double vg_spacing = 0.0;  // 0 = default (swath width)
    EnergyModel energy;
    std::vector<std::string> warnings;
};

namespace detail {

using nlohmann::json;

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw PlannerError(ErrorKind::parse_error, "cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw PlannerError(ErrorKind::parse_error,
                           "invalid JSON in '" + path.string() + "': " + e.what());
    }
}

inline Point2 parse_position(const json& pos, const std::string& where) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
        throw PlannerError(ErrorKind::parse_error, where + ": malformed coordinate pair");
    }
    Point2 p{pos[0].get<double>(), pos[1].get<double>()};
    if (!is_finite(p)) {
        throw PlannerError(ErrorKind::parse_error, where + ": non-finite coordinate");
    }
    return p;
}

inline std::vector<Point2> parse_ring(const json& ring, const std::string& where) {
    if (!ring.is_array() || ring.size() < 3) {
        throw PlannerError(ErrorKind::parse_error, where + ": ring needs at least 3 positions");
    }
    std::vector<Point2> out;
    out.reserve(ring.size());
    for (size_t i = 0; i < ring.size(); ++i) {
        out.push_back(parse_position(ring[i], where + ", position " + std::to_string(i)));
    }
    return out;
}

/// GeoJSON Polygon geometry -> validated Polygon. Flips misoriented rings and
/// records a warning for a clockwise exterior.
inline Polygon parse_polygon(const json& geometry, const std::string& where,
                             std::vector<std::string>& warnings) {
    if (!geometry.is_object() || geometry.value("type", "") != "Polygon") {
        throw PlannerError(ErrorKind::parse_error, where + ": geometry is not a Polygon");
    }
    const json& coords = geometry.at("coordinates");
    if (!coords.is_array() || coords.empty()) {
        throw PlannerError(ErrorKind::parse_error, where + ": Polygon has no rings");
    }
    std::vector<Point2> exterior = parse_ring(coords[0], where + ", exterior ring");
    std::vector<Point2> check = exterior;
    while (check.size() > 1 && near(check.front(), check.back())) check.pop_back();
    if (ring_signed_area(check) < 0.0) {
        warnings.push_back(where + ": exterior ring was clockwise, normalized to CCW");
    }
    std::vector<std::vector<Point2>> holes;
    for (size_t i = 1; i < coords.size(); ++i) {
        holes.push_back(parse_ring(coords[i], where + ", ring " + std::to_string(i)));
    }
    try {
        return Polygon(std::move(exterior), std::move(holes));
    } catch (const PlannerError& e) {
        throw PlannerError(ErrorKind::parse_error, where + ": " + e.what());
    }
}

inline bool polygons_overlap(const Polygon& a, const Polygon& b) {
    for (const Point2& p : a.exterior()) {
        if (point_in_polygon(p, b) == PointClass::inside) return true;
    }
    for (const Point2& p : b.exterior()) {
        if (point_in_polygon(p, a) == PointClass::inside) return true;
    }
    bool crossing = false;
    a.for_each_edge([&](const Point2& p, const Point2& q) {
        if (crossing) return;
        b.for_each_edge([&](const Point2& r, const Point2& s) {
            crossing = crossing || segments_properly_cross(p, q, r, s);
        });
    });
    return crossing;
}

inline OrientationStrategy parse_orientation(const json& value, const std::string& where) {
    OrientationStrategy s;
    if (value.is_string()) {
        s.kind = orientation_kind_from_string(value.get<std::string>());
        return s;
    }
    if (!value.is_object()) {
        throw PlannerError(ErrorKind::parse_error, where + ": orientation must be a string or object");
    }
    s.kind = orientation_kind_from_string(value.value("strategy", "minwidth"));
    if (value.contains("step_deg")) s.scan_step = value["step_deg"].get<double>() * kPi / 180.0;
    if (value.contains("range_deg")) s.scan_range = value["range_deg"].get<double>() * kPi / 180.0;
    if (s.kind == OrientationKind::scan && !(s.scan_step > 0.0 && s.scan_step <= kPi / 36.0)) {
        throw PlannerError(ErrorKind::parse_error,
                           where + ": scan step must be in (0, 5] degrees");
    }
    return s;
}

}  // namespace detail

/// Loads the GeoJSON scenario file plus its `<stem>.config.json` sidecar when
/// present. The first `role=roi` Polygon feature is the region of interest;
/// every `role=nfz` feature is an obstacle and must overlap the ROI.
inline Scenario load_scenario(const std::filesystem::path& path) {
    using detail::json;
    json doc = detail::read_json_file(path);
    if (doc.value("type", "") != "FeatureCollection" || !doc.contains("features")) {
        throw PlannerError(ErrorKind::parse_error,
                           path.string() + ": expected a GeoJSON FeatureCollection");
    }
    std::vector<std::string> warnings;
    std::optional<Polygon> roi;
    std::vector<Polygon> obstacles;
    std::vector<size_t> obstacle_features;
    const json& features = doc["features"];
    for (size_t i = 0; i < features.size(); ++i) {
        const json& feature = features[i];
        std::string where = "feature " + std::to_string(i);
        std::string role;
        if (feature.contains("properties") && feature["properties"].is_object()) {
            role = feature["properties"].value("role", "");
        }
        if (role == "roi") {
            if (roi.has_value()) {
                warnings.push_back(where + ": extra roi feature ignored");
                continue;
            }
            roi = detail::parse_polygon(feature.at("geometry"), where, warnings);
        } else if (role == "nfz") {
            obstacles.push_back(detail::parse_polygon(feature.at("geometry"), where, warnings));
            obstacle_features.push_back(i);
        } else {
            warnings.push_back(where + ": role '" + role + "' ignored");
        }
    }
    if (!roi.has_value()) {
        throw PlannerError(ErrorKind::parse_error,
                           path.string() + ": no feature with role 'roi'");
    }
    for (size_t k = 0; k < obstacles.size(); ++k) {
        if (!detail::polygons_overlap(obstacles[k], *roi)) {
            throw PlannerError(ErrorKind::parse_error,
                               "feature " + std::to_string(obstacle_features[k]) +
                                   ": nfz does not overlap the roi");
        }
    }

    Scenario sc{path.stem().string(), std::move(*roi), std::move(obstacles)};
    sc.warnings = std::move(warnings);

    std::filesystem::path config_path = path;
    config_path.replace_extension(".config.json");
    if (std::filesystem::exists(config_path)) {
        json cfg = detail::read_json_file(config_path);
        if (!cfg.is_object()) {
            throw PlannerError(ErrorKind::parse_error, config_path.string() + ": expected an object");
        }
        std::string where = config_path.filename().string();
        if (cfg.contains("name")) sc.name = cfg["name"].get<std::string>();
        if (cfg.contains("swath_width")) sc.swath_width = cfg["swath_width"].get<double>();
        if (cfg.contains("buffer_scale")) sc.buffer_scale = cfg["buffer_scale"].get<double>();
        if (cfg.contains("robots")) sc.n_robots = cfg["robots"].get<int>();
        if (cfg.contains("seed")) sc.seed = cfg["seed"].get<uint64_t>();
        if (cfg.contains("vg_spacing")) sc.vg_spacing = cfg["vg_spacing"].get<double>();
        if (cfg.contains("depot")) {
            sc.depot = detail::parse_position(cfg["depot"], where + ": depot");
        }
        if (cfg.contains("orientation")) {
            sc.orientation = detail::parse_orientation(cfg["orientation"], where);
        }
        if (cfg.contains("energy")) {
            const json& e = cfg["energy"];
            sc.energy.cruise_speed = e.value("cruise_speed", sc.energy.cruise_speed);
            sc.energy.cruise_power = e.value("cruise_power", sc.energy.cruise_power);
            sc.energy.turn_penalty = e.value("turn_penalty", sc.energy.turn_penalty);
            sc.energy.turn_time = e.value("turn_time", sc.energy.turn_time);
        }
    }
    return sc;
}

/// Scenario invariants that do not depend on file parsing (CLI overrides may
/// arrive after load).
inline void validate_scenario(const Scenario& sc) {
    if (!(sc.swath_width > 0.0)) {
        throw PlannerError(ErrorKind::invalid_argument,
                           "swath width must be positive (set it in the config sidecar or via "
                           "--swath-width)");
    }
    if (sc.n_robots < 1) {
        throw PlannerError(ErrorKind::invalid_argument, "need at least one robot");
    }
    if (sc.buffer_scale < 0.0) {
        throw PlannerError(ErrorKind::invalid_argument, "buffer scale must be >= 0");
    }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::json plan_to_geojson(const CoveragePlan& plan) {
    using detail::json;
    json coords = json::array();
    for (const Point2& p : plan.waypoints) coords.push_back({p.x, p.y});
    json legs = json::array();
    for (const PlanLeg& leg : plan.legs) {
        legs.push_back({{"kind", to_string(leg.kind)},
                        {"length_m", leg.length},
                        {"swath", leg.swath_id},
                        {"depot_leg", leg.depot_leg},
                        {"first_point", leg.first_point},
                        {"last_point", leg.last_point}});
    }
    json feature = {{"type", "Feature"},
                    {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
                    {"properties",
                     {{"robot", plan.robot_id},
                      {"legs", legs},
                      {"swath_order", plan.swath_ids},
                      {"headings", plan.headings}}}};
    return json{{"type", "FeatureCollection"}, {"features", json::array({feature})}};
}

inline std::vector<Point2> waypoints_from_geojson(const nlohmann::json& doc) {
    std::vector<Point2> out;
    for (const auto& feature : doc.at("features")) {
        for (const auto& pos : feature.at("geometry").at("coordinates")) {
            out.push_back({pos[0].get<double>(), pos[1].get<double>()});
        }
    }
    return out;
}

inline std::string waypoints_to_csv(const CoveragePlan& plan) {
    std::ostringstream os;
    os.precision(17);
    os << "index,x,y\n";
    for (size_t i = 0; i < plan.waypoints.size(); ++i) {
        os << i << "," << plan.waypoints[i].x << "," << plan.waypoints[i].y << "\n";
    }
    return os.str();
}

inline nlohmann::json metrics_to_json(const MetricsReport& report) {
    using detail::json;
    json robots = json::array();
    for (const RobotMetrics& rm : report.robots) {
        robots.push_back({{"robot", rm.robot_id},
                          {"length_m", rm.length},
                          {"swath_length_m", rm.swath_length},
                          {"transition_length_m", rm.transition_length},
                          {"depot_leg_length_m", rm.depot_leg_length},
                          {"turns", rm.turns},
                          {"energy_wh", rm.energy},
                          {"coverage_energy_wh", rm.coverage_energy},
                          {"duration_s", rm.duration}});
    }
    return json{{"robots", robots},
                {"fleet",
                 {{"total_length_m", report.total_length},
                  {"total_energy_wh", report.total_energy},
                  {"coverage_length_m", report.coverage_length},
                  {"coverage_energy_wh", report.coverage_energy},
                  {"total_turns", report.total_turns},
                  {"makespan_s", report.makespan},
                  {"balance_ratio", report.balance_ratio},
                  {"coverage_fraction", report.coverage_fraction}}}};
}

}  // namespace sweepcover
