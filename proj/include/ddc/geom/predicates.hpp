#pragma once

#include "ddc/geom/point.hpp"

namespace ddc {

/// Sign of the 2x2 orientation determinant for (a, b, c).
/// Positive when c lies to the left of directed line a->b (counter-clockwise
/// turn), negative to the right, exactly zero when collinear. Uses a floating
/// point filter with an exact adaptive fallback, so the sign is always right.
double orient2d(const Point2D& a, const Point2D& b, const Point2D& c);

/// Relative position of d against the circumcircle of CCW triangle (a, b, c).
/// Positive means strictly inside, negative outside. Filtered: near-zero
/// determinants are re-evaluated in extended precision and reported as 0 when
/// still below the error bound, which callers treat as "on the circle".
double incircle(const Point2D& a, const Point2D& b, const Point2D& c, const Point2D& d);

inline int orient2d_sign(const Point2D& a, const Point2D& b, const Point2D& c) {
    const double v = orient2d(a, b, c);
    return (v > 0.0) - (v < 0.0);
}

} // namespace ddc
