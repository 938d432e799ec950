#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "ddc/geom/point.hpp"

namespace ddc {

struct Triangulation {
    std::vector<Point2D> vertices;                   // distinct sites, sorted
    std::vector<std::array<int, 3>> triangles;       // CCW vertex index triples
    std::vector<std::pair<int, int>> boundary_edges; // outer face as one CCW cycle
};

/// Delaunay triangulation of the distinct input sites. Duplicate coordinates
/// are merged before triangulating. Throws DegenerateInput when fewer than 3
/// distinct points remain or all points are collinear.
Triangulation delaunay(std::span<const Point2D> points);

} // namespace ddc
