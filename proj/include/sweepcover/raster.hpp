#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "sweepcover/geometry.hpp"

namespace sweepcover {

/// Cell-center occupancy grid over a fixed frame.
struct OccupancyGrid {
    double origin_x = 0.0, origin_y = 0.0;
    double cell = 1.0;
    int nx = 0, ny = 0;
    std::vector<uint8_t> mask;  // row-major, 1 = set

    double center_x(int i) const { return origin_x + (i + 0.5) * cell; }
    double center_y(int j) const { return origin_y + (j + 0.5) * cell; }
    uint8_t at(int i, int j) const { return mask[static_cast<size_t>(j) * nx + i]; }
    void set(int i, int j, uint8_t v) { mask[static_cast<size_t>(j) * nx + i] = v; }
    size_t count() const {
        size_t c = 0;
        for (uint8_t v : mask) c += v;
        return c;
    }
};

/// Marks cells whose center lies inside the region (even-odd scanline over
/// all rings; holes toggle out).
inline OccupancyGrid rasterize_region(const Region& region, double cell) {
    OccupancyGrid grid;
    grid.cell = cell;
    if (region.empty()) return grid;
    BoundingBox bb = region.bounds();
    grid.origin_x = bb.min_x - cell;
    grid.origin_y = bb.min_y - cell;
    grid.nx = static_cast<int>(std::ceil((bb.width() + 2.0 * cell) / cell));
    grid.ny = static_cast<int>(std::ceil((bb.height() + 2.0 * cell) / cell));
    grid.mask.assign(static_cast<size_t>(grid.nx) * grid.ny, 0);

    std::vector<double> xs;
    for (int j = 0; j < grid.ny; ++j) {
        double y = grid.center_y(j);
        xs.clear();
        region.for_each_edge([&](const Point2& a, const Point2& b) {
            if ((a.y > y) == (b.y > y)) return;
            xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
        });
        std::sort(xs.begin(), xs.end());
        for (size_t k = 0; k + 1 < xs.size(); k += 2) {
            int i0 = static_cast<int>(std::ceil((xs[k] - grid.origin_x) / cell - 0.5));
            int i1 = static_cast<int>(std::floor((xs[k + 1] - grid.origin_x) / cell - 0.5));
            for (int i = std::max(i0, 0); i <= std::min(i1, grid.nx - 1); ++i) grid.set(i, j, 1);
        }
    }
    return grid;
}

/// Marks cells whose center is within `radius` of segment [a, b].
inline void paint_capsule(OccupancyGrid& grid, const Point2& a, const Point2& b, double radius) {
    double min_x = std::min(a.x, b.x) - radius, max_x = std::max(a.x, b.x) + radius;
    double min_y = std::min(a.y, b.y) - radius, max_y = std::max(a.y, b.y) + radius;
    int i0 = std::max(0, static_cast<int>(std::floor((min_x - grid.origin_x) / grid.cell)));
    int i1 = std::min(grid.nx - 1, static_cast<int>(std::ceil((max_x - grid.origin_x) / grid.cell)));
    int j0 = std::max(0, static_cast<int>(std::floor((min_y - grid.origin_y) / grid.cell)));
    int j1 = std::min(grid.ny - 1, static_cast<int>(std::ceil((max_y - grid.origin_y) / grid.cell)));
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
            if (grid.at(i, j)) continue;
            Point2 c{grid.center_x(i), grid.center_y(j)};
            if (distance_point_segment(c, a, b) <= radius) grid.set(i, j, 1);
        }
    }
}

/// Fraction of `target` cells (by area) within `radius` of any segment.
inline double covered_fraction(const Region& target,
                               const std::vector<std::pair<Point2, Point2>>& segments,
                               double radius, double cell) {
    OccupancyGrid inside = rasterize_region(target, cell);
    size_t total = inside.count();
    if (total == 0) return 0.0;
    OccupancyGrid covered = inside;
    covered.mask.assign(covered.mask.size(), 0);
    for (const auto& [a, b] : segments) paint_capsule(covered, a, b, radius);
    size_t hit = 0;
    for (size_t i = 0; i < inside.mask.size(); ++i) hit += (inside.mask[i] & covered.mask[i]);
    return static_cast<double>(hit) / static_cast<double>(total);
}

}  // namespace sweepcover
