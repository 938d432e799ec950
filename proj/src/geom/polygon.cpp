#include "ddc/geom/polygon.hpp"

#include <algorithm>
#include <cmath>

#include "ddc/error.hpp"
#include "ddc/geom/predicates.hpp"
#include "ddc/kernels.hpp"

namespace ddc {

double signed_area(std::span<const Point2D> ring) {
    double acc = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2D& a = ring[i];
        const Point2D& b = ring[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    return 0.5 * acc;
}

double polygon_area(const Polygon& poly) {
    return std::abs(signed_area(poly.ring));
}

void make_ccw(Polygon& poly) {
    if (signed_area(poly.ring) < 0.0) std::reverse(poly.ring.begin(), poly.ring.end());
}

double dist_sq_point_segment(Point2D p, Point2D a, Point2D b) {
    const double vx = b.x - a.x;
    const double vy = b.y - a.y;
    const double wx = p.x - a.x;
    const double wy = p.y - a.y;
    const double c1 = vx * wx + vy * wy;
    if (c1 <= 0.0) return dist_sq(p, a);
    const double c2 = vx * vx + vy * vy;
    if (c2 <= c1) return dist_sq(p, b);
    const double t = c1 / c2;
    return dist_sq(p, Point2D{a.x + t * vx, a.y + t * vy});
}

PointLocation point_in_polygon(Point2D p, const Polygon& poly, double eps) {
    const std::size_t n = poly.size();
    if (n < 3) throw InvalidParam("polygon needs at least 3 vertices");
    if (eps < 0.0) eps = 1e-9 * poly.bbox().diagonal();
    const double eps_sq = eps * eps;
    for (std::size_t i = 0; i < n; ++i) {
        if (dist_sq_point_segment(p, poly.ring[i], poly.ring[(i + 1) % n]) <= eps_sq) {
            return PointLocation::on_boundary;
        }
    }
    int winding = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2D& a = poly.ring[i];
        const Point2D& b = poly.ring[(i + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && orient2d(a, b, p) > 0.0) ++winding;
        } else {
            if (b.y <= p.y && orient2d(a, b, p) < 0.0) --winding;
        }
    }
    return winding != 0 ? PointLocation::inside : PointLocation::outside;
}

bool point_covered(Point2D p, const Polygon& poly, double eps) {
    return point_in_polygon(p, poly, eps) != PointLocation::outside;
}

namespace {

bool proper_cross(Point2D a, Point2D b, Point2D c, Point2D d) {
    const int o1 = orient2d_sign(c, d, a);
    const int o2 = orient2d_sign(c, d, b);
    const int o3 = orient2d_sign(a, b, c);
    const int o4 = orient2d_sign(a, b, d);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

} // namespace

bool polygons_intersect(const Polygon& a, const Polygon& b) {
    if (a.size() < 3 || b.size() < 3) throw InvalidParam("polygon needs at least 3 vertices");
    const BBox ba = a.bbox();
    const BBox bb = b.bbox();
    if (ba.min_x > bb.max_x || bb.min_x > ba.max_x || ba.min_y > bb.max_y || bb.min_y > ba.max_y) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point2D& p = a.ring[i];
        const Point2D& q = a.ring[(i + 1) % a.size()];
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (proper_cross(p, q, b.ring[j], b.ring[(j + 1) % b.size()])) return true;
        }
    }
    // Touching or containment: vertex-in-polygon covers collinear overlap too,
    // since an overlap always puts some endpoint on the other boundary.
    for (const Point2D& p : a.ring) {
        if (point_covered(p, b)) return true;
    }
    for (const Point2D& p : b.ring) {
        if (point_covered(p, a)) return true;
    }
    return false;
}

double min_vertex_distance(const Polygon& a, const Polygon& b) {
    if (a.ring.empty() || b.ring.empty()) throw InvalidParam("empty polygon");
    return std::sqrt(kernels::min_pair_dist_sq(a.ring, b.ring));
}

} // namespace ddc
