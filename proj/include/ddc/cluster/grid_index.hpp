#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "ddc/geom/point.hpp"

namespace ddc {

/// Uniform grid over the points: cell of a point is floor(coord / cell_size)
/// per axis. Point ids are stored cell-contiguously so neighborhood scans run
/// on dense spans.
struct GridIndex {
    double cell_size = 0.0;
    std::unordered_map<std::uint64_t, int> cell_of;  // packed cell coord -> slot
    std::vector<int> cell_start;                     // CSR offsets, size cells+1
    std::vector<int> ids;                            // point ids grouped by cell
    std::vector<double> xs, ys;                      // coordinates in ids order

    static std::uint64_t key(std::int32_t cx, std::int32_t cy) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
               static_cast<std::uint32_t>(cy);
    }
};

/// Throws InvalidParam for a non-positive cell size.
GridIndex build_grid_index(std::span<const Point2D> points, double cell_size);

/// Ids within distance eps of points[center_id], center included, ascending.
/// The caller keeps cell_size equal to eps, so scanning the 3x3 neighborhood
/// around the center's cell is exhaustive.
std::vector<int> region_query(const GridIndex& index, std::span<const Point2D> points,
                              int center_id, double eps);

} // namespace ddc
