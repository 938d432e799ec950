#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "ddc/geom/polygon.hpp"

namespace ddc {

/// A cluster summarized by its boundary polygon and density. This is the
/// only thing nodes exchange during aggregation.
struct Contour {
    Polygon polygon;
    std::int64_t point_count = 0;
    double density = 0.0;  // point_count / polygon area
    int source_node = -1;
    std::optional<double> eps_hint;  // Eps of the producing density-based node
};

/// Builds a contour with density derived from the polygon area.
/// Throws DegenerateInput when the polygon area is not positive.
Contour make_contour(Polygon polygon, std::int64_t point_count, int source_node,
                     std::optional<double> eps_hint = std::nullopt);

/// Merges a connected group: the new polygon is the characteristic shape of
/// the union of all member polygons' vertex sets, counts add, density is
/// recomputed, eps_hint is the max of the members'. A singleton group is
/// returned unchanged.
Contour merge_contours(std::span<const Contour> group, double lambda_norm);

} // namespace ddc
