#include <limits>

#include "internal.hpp"

// Reference kernels. The AVX2 variants mirror these operation-for-operation;
// any change here must be made there as well or the equivalence tests fail.

namespace ddc::kernels::detail {

void dist_sq_batch_scalar(std::span<const double> xs, std::span<const double> ys,
                          Point2D q, std::span<double> out) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - q.x;
        const double dy = ys[i] - q.y;
        out[i] = dx * dx + dy * dy;
    }
}

void collect_within_scalar(std::span<const double> xs, std::span<const double> ys,
                           Point2D q, double r_sq, int base, std::vector<int>& out) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - q.x;
        const double dy = ys[i] - q.y;
        if (dx * dx + dy * dy <= r_sq) out.push_back(base + static_cast<int>(i));
    }
}

int nearest_centroid_scalar(Point2D p, std::span<const double> cxs, std::span<const double> cys) {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cxs.size(); ++j) {
        const double dx = cxs[j] - p.x;
        const double dy = cys[j] - p.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<int>(j);
        }
    }
    return best;
}

double min_pair_dist_sq_scalar(std::span<const Point2D> a, std::span<const Point2D> b) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2D& p : a) {
        for (const Point2D& q : b) {
            const double dx = q.x - p.x;
            const double dy = q.y - p.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best) best = d2;
        }
    }
    return best;
}

} // namespace ddc::kernels::detail
