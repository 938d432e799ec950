#include <limits>

#include "internal.hpp"

// This translation unit is the only one compiled with -mavx2. Results must be
// bit-identical to the scalar kernels: same subtract/multiply/add order per
// element, no FMA (the build disables FP contraction), and strict `<` when
// scanning for minima so index ties resolve identically.

#if defined(__AVX2__)

#include <immintrin.h>

namespace ddc::kernels::detail {

bool avx2_available() {
    return __builtin_cpu_supports("avx2") != 0;
}

void dist_sq_batch_avx2(std::span<const double> xs, std::span<const double> ys,
                        Point2D q, std::span<double> out) {
    const std::size_t n = xs.size();
    const __m256d qx = _mm256_set1_pd(q.x);
    const __m256d qy = _mm256_set1_pd(q.y);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + i), qx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + i), qy);
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        _mm256_storeu_pd(out.data() + i, d2);
    }
    for (; i < n; ++i) {
        const double dx = xs[i] - q.x;
        const double dy = ys[i] - q.y;
        out[i] = dx * dx + dy * dy;
    }
}

void collect_within_avx2(std::span<const double> xs, std::span<const double> ys,
                         Point2D q, double r_sq, int base, std::vector<int>& out) {
    const std::size_t n = xs.size();
    const __m256d qx = _mm256_set1_pd(q.x);
    const __m256d qy = _mm256_set1_pd(q.y);
    const __m256d r2 = _mm256_set1_pd(r_sq);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + i), qx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + i), qy);
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, r2, _CMP_LE_OQ));
        while (mask != 0) {
            const int lane = __builtin_ctz(static_cast<unsigned>(mask));
            out.push_back(base + static_cast<int>(i) + lane);
            mask &= mask - 1;
        }
    }
    for (; i < n; ++i) {
        const double dx = xs[i] - q.x;
        const double dy = ys[i] - q.y;
        if (dx * dx + dy * dy <= r_sq) out.push_back(base + static_cast<int>(i));
    }
}

int nearest_centroid_avx2(Point2D p, std::span<const double> cxs, std::span<const double> cys) {
    const std::size_t k = cxs.size();
    const __m256d px = _mm256_set1_pd(p.x);
    const __m256d py = _mm256_set1_pd(p.y);
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t j = 0;
    alignas(32) double buf[4];
    for (; j + 4 <= k; j += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(cxs.data() + j), px);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(cys.data() + j), py);
        _mm256_store_pd(buf, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
        for (int lane = 0; lane < 4; ++lane) {
            if (buf[lane] < best_d2) {
                best_d2 = buf[lane];
                best = static_cast<int>(j) + lane;
            }
        }
    }
    for (; j < k; ++j) {
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

double min_pair_dist_sq_avx2(std::span<const Point2D> a, std::span<const Point2D> b) {
    // Deinterleave the inner side once; the minimum of exact per-pair values
    // does not depend on reduction order, so lane-parallel min is safe.
    std::vector<double> bx(b.size()), by(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        bx[i] = b[i].x;
        by[i] = b[i].y;
    }
    double best = std::numeric_limits<double>::infinity();
    __m256d vbest = _mm256_set1_pd(best);
    for (const Point2D& p : a) {
        const __m256d px = _mm256_set1_pd(p.x);
        const __m256d py = _mm256_set1_pd(p.y);
        std::size_t i = 0;
        for (; i + 4 <= b.size(); i += 4) {
            const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(bx.data() + i), px);
            const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(by.data() + i), py);
            vbest = _mm256_min_pd(vbest, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
        }
        for (; i < b.size(); ++i) {
            const double dx = bx[i] - p.x;
            const double dy = by[i] - p.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best) best = d2;
        }
    }
    alignas(32) double buf[4];
    _mm256_store_pd(buf, vbest);
    for (const double v : buf) {
        if (v < best) best = v;
    }
    return best;
}

} // namespace ddc::kernels::detail

#else // !__AVX2__: never selected at runtime, keep the linker satisfied

namespace ddc::kernels::detail {

bool avx2_available() { return false; }

void dist_sq_batch_avx2(std::span<const double> xs, std::span<const double> ys,
                        Point2D q, std::span<double> out) {
    dist_sq_batch_scalar(xs, ys, q, out);
}

void collect_within_avx2(std::span<const double> xs, std::span<const double> ys,
                         Point2D q, double r_sq, int base, std::vector<int>& out) {
    collect_within_scalar(xs, ys, q, r_sq, base, out);
}

int nearest_centroid_avx2(Point2D p, std::span<const double> cxs, std::span<const double> cys) {
    return nearest_centroid_scalar(p, cxs, cys);
}

double min_pair_dist_sq_avx2(std::span<const Point2D> a, std::span<const Point2D> b) {
    return min_pair_dist_sq_scalar(a, b);
}

} // namespace ddc::kernels::detail

#endif
