#pragma once

#include <span>

#include "ddc/geom/delaunay.hpp"
#include "ddc/geom/polygon.hpp"

namespace ddc {

/// Boundary of the point set by edge removal on the Delaunay triangulation.
/// The length threshold is l = l_min + lambda_norm * (l_max - l_min) over the
/// triangulation's edge lengths; the longest boundary edge above l whose
/// opposing triangle vertex is interior is removed, repeatedly. lambda_norm=1
/// therefore keeps the convex hull. Throws DegenerateInput like delaunay and
/// InvalidParam for lambda_norm outside [0,1].
Polygon characteristic_shape(std::span<const Point2D> points, double lambda_norm);

/// Same removal procedure on an existing triangulation.
Polygon characteristic_shape(const Triangulation& tri, double lambda_norm);

/// Axis-aligned CCW square around `center`, used as the contour of clusters
/// too small or too flat to triangulate.
Polygon degenerate_square(Point2D center, double half_side);

} // namespace ddc
