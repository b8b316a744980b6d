#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "sweepcover/routing.hpp"
#include "sweepcover/workspace.hpp"

namespace sweepcover {

namespace detail {

inline std::string svg_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

inline const char* robot_color(int robot) {
    static const char* palette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
                                    "#46c5d8", "#f032e6", "#9a6324", "#808000", "#008080"};
    return palette[robot % 10];
}

/// Round length near `target` of the form {1, 2, 5} * 10^k.
inline double nice_length(double target) {
    double k = std::pow(10.0, std::floor(std::log10(target)));
    for (double m : {5.0, 2.0, 1.0}) {
        if (m * k <= target) return m * k;
    }
    return k;
}

}  // namespace detail

/// Deterministic SVG rendering of a run: ROI, shaded obstacles, feasible
/// space boundary, per-robot paths, depot, legend and a scale bar. World
/// coordinates are mapped by translation plus a y flip, so distances are
/// preserved; the margin is 5% of the larger scenario dimension.
inline std::string render_svg(const std::vector<CoveragePlan>& plans, const Workspace& ws) {
    using detail::svg_num;
    BoundingBox bb = ws.roi.bounds();
    for (const Polygon& obs : ws.obstacles) bb.expand(obs.bounds());
    double margin = 0.05 * std::max(bb.width(), bb.height());
    double width = bb.width() + 2.0 * margin;
    double height = bb.height() + 2.0 * margin;
    auto mx = [&](double x) { return x - bb.min_x + margin; };
    auto my = [&](double y) { return (bb.max_y + margin) - y; };
    double stroke = std::max(width, height) / 400.0;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + svg_num(width) + " " +
           svg_num(height) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + svg_num(width) + "\" height=\"" + svg_num(height) +
           "\" fill=\"#ffffff\"/>\n";

    auto ring_path = [&](const std::vector<Point2>& ring) {
        std::string d;
        for (size_t i = 0; i < ring.size(); ++i) {
            d += (i == 0 ? "M" : "L");
            d += svg_num(mx(ring[i].x)) + " " + svg_num(my(ring[i].y));
        }
        d += "Z";
        return d;
    };
    auto polygon_path = [&](const Polygon& poly) {
        std::string d;
        poly.for_each_ring([&](const std::vector<Point2>& ring) { d += ring_path(ring); });
        return d;
    };

    out += "<path class=\"roi\" d=\"" + polygon_path(ws.roi) +
           "\" fill=\"#f0efe8\" fill-rule=\"evenodd\" stroke=\"#444444\" stroke-width=\"" +
           svg_num(stroke) + "\"/>\n";
    for (const Polygon& obs : ws.obstacles) {
        out += "<path class=\"nfz\" d=\"" + polygon_path(obs) +
               "\" fill=\"#d73027\" fill-opacity=\"0.35\" fill-rule=\"evenodd\" "
               "stroke=\"#d73027\" stroke-width=\"" +
               svg_num(stroke) + "\"/>\n";
    }
    for (const Polygon& c : ws.feasible.components) {
        out += "<path class=\"feasible\" d=\"" + polygon_path(c) +
               "\" fill=\"none\" stroke=\"#2166ac\" stroke-width=\"" + svg_num(0.6 * stroke) +
               "\" stroke-dasharray=\"" + svg_num(4 * stroke) + " " + svg_num(2 * stroke) +
               "\"/>\n";
    }
    for (const CoveragePlan& plan : plans) {
        if (plan.waypoints.size() < 2) continue;
        std::string d;
        for (size_t i = 0; i < plan.waypoints.size(); ++i) {
            d += (i == 0 ? "M" : "L");
            d += svg_num(mx(plan.waypoints[i].x)) + " " + svg_num(my(plan.waypoints[i].y));
        }
        out += "<path class=\"plan\" d=\"" + d + "\" fill=\"none\" stroke=\"" +
               detail::robot_color(plan.robot_id) + "\" stroke-width=\"" + svg_num(1.2 * stroke) +
               "\" stroke-linejoin=\"round\"/>\n";
    }
    if (!plans.empty() && !plans.front().waypoints.empty()) {
        const Point2& depot = plans.front().waypoints.front();
        out += "<circle class=\"depot\" cx=\"" + svg_num(mx(depot.x)) + "\" cy=\"" +
               svg_num(my(depot.y)) + "\" r=\"" + svg_num(2.5 * stroke) +
               "\" fill=\"#000000\"/>\n";
    }

    double bar = detail::nice_length(bb.width() / 4.0);
    double bar_y = height - 0.4 * margin;
    out += "<line class=\"scalebar\" x1=\"" + svg_num(margin) + "\" y1=\"" + svg_num(bar_y) +
           "\" x2=\"" + svg_num(margin + bar) + "\" y2=\"" + svg_num(bar_y) +
           "\" stroke=\"#000000\" stroke-width=\"" + svg_num(stroke) + "\"/>\n";
    out += "<text x=\"" + svg_num(margin) + "\" y=\"" + svg_num(bar_y - 0.8 * stroke) +
           "\" font-size=\"" + svg_num(6 * stroke) + "\">" + svg_num(bar) + " m</text>\n";

    double legend_y = margin * 0.5;
    for (const CoveragePlan& plan : plans) {
        double y = legend_y + plan.robot_id * 7.0 * stroke;
        out += "<line class=\"legend\" x1=\"" + svg_num(width - 18.0 * 6 * stroke) + "\" y1=\"" +
               svg_num(y) + "\" x2=\"" + svg_num(width - 15.0 * 6 * stroke) + "\" y2=\"" +
               svg_num(y) + "\" stroke=\"" + detail::robot_color(plan.robot_id) +
               "\" stroke-width=\"" + svg_num(1.2 * stroke) + "\"/>\n";
        out += "<text x=\"" + svg_num(width - 14.5 * 6 * stroke) + "\" y=\"" +
               svg_num(y + 2 * stroke) + "\" font-size=\"" + svg_num(5 * stroke) + "\">robot " +
               std::to_string(plan.robot_id) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace sweepcover
