#pragma once

#include <span>
#include <vector>

#include "ddc/geom/point.hpp"

namespace ddc {

/// Simple polygon. Closed ring stored without a repeated last vertex;
/// canonical orientation is CCW (signed area > 0).
struct Polygon {
    std::vector<Point2D> ring;

    [[nodiscard]] std::size_t size() const { return ring.size(); }
    [[nodiscard]] BBox bbox() const { return bounding_box(ring); }
};

enum class PointLocation { inside, on_boundary, outside };

/// Signed shoelace area: positive for CCW rings.
double signed_area(std::span<const Point2D> ring);

/// Absolute shoelace area.
double polygon_area(const Polygon& poly);

/// Reverses the ring in place if its signed area is negative.
void make_ccw(Polygon& poly);

/// Squared distance from p to segment [a, b].
double dist_sq_point_segment(Point2D p, Point2D a, Point2D b);

/// Classifies p against the polygon. Points within eps of an edge are
/// on_boundary; eps < 0 selects the default tolerance of 1e-9 times the
/// polygon's bbox diagonal. Interior membership uses the nonzero winding
/// rule with exact orientation tests.
PointLocation point_in_polygon(Point2D p, const Polygon& poly, double eps = -1.0);

/// inside or on_boundary.
bool point_covered(Point2D p, const Polygon& poly, double eps = -1.0);

/// True when the closed regions overlap: a proper edge crossing, or any
/// vertex of one polygon inside or on the other (containment counts).
bool polygons_intersect(const Polygon& a, const Polygon& b);

/// Minimum Euclidean distance over all vertex pairs (a_i, b_j).
double min_vertex_distance(const Polygon& a, const Polygon& b);

} // namespace ddc
