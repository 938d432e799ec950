#include "ddc/geom/contour.hpp"

#include <algorithm>
#include <vector>

#include "ddc/error.hpp"
#include "ddc/geom/chi_shape.hpp"

namespace ddc {

Contour make_contour(Polygon polygon, std::int64_t point_count, int source_node,
                     std::optional<double> eps_hint) {
    if (point_count < 0) throw InvalidParam("negative point_count");
    const double area = polygon_area(polygon);
    if (!(area > 0.0)) throw DegenerateInput("contour polygon has no area");
    Contour c;
    c.polygon = std::move(polygon);
    c.point_count = point_count;
    c.density = static_cast<double>(point_count) / area;
    c.source_node = source_node;
    c.eps_hint = eps_hint;
    return c;
}

Contour merge_contours(std::span<const Contour> group, double lambda_norm) {
    if (group.empty()) throw EmptyGroup("merge_contours on empty group");
    if (group.size() == 1) return group.front();

    std::vector<Point2D> verts;
    std::int64_t count = 0;
    std::optional<double> eps_hint;
    for (const Contour& c : group) {
        verts.insert(verts.end(), c.polygon.ring.begin(), c.polygon.ring.end());
        count += c.point_count;
        if (c.eps_hint) eps_hint = eps_hint ? std::max(*eps_hint, *c.eps_hint) : *c.eps_hint;
    }
    Polygon merged = characteristic_shape(verts, lambda_norm);
    return make_contour(std::move(merged), count, group.front().source_node, eps_hint);
}

} // namespace ddc
