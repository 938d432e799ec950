#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace ddc {

struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2D& a, const Point2D& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator<(const Point2D& a, const Point2D& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }
};

inline double dist_sq(const Point2D& a, const Point2D& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double dist(const Point2D& a, const Point2D& b) {
    return std::sqrt(dist_sq(a, b));
}

struct BBox {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void expand(const Point2D& p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }

    bool empty() const { return min_x > max_x; }

    double width() const { return empty() ? 0.0 : max_x - min_x; }
    double height() const { return empty() ? 0.0 : max_y - min_y; }

    double diagonal() const {
        if (empty()) return 0.0;
        return std::hypot(max_x - min_x, max_y - min_y);
    }
};

inline BBox bounding_box(std::span<const Point2D> pts) {
    BBox box;
    for (const auto& p : pts) box.expand(p);
    return box;
}

/// Sorted unique copy (exact coordinate equality).
inline std::vector<Point2D> dedup_points(std::span<const Point2D> pts) {
    std::vector<Point2D> out(pts.begin(), pts.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace ddc
