#include "ddc/cluster/dbscan.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ddc/cluster/grid_index.hpp"
#include "ddc/error.hpp"
#include "ddc/kernels.hpp"

namespace ddc {
namespace {

void validate(const DbscanParams& p) {
    if (!(p.eps > 0.0) || !std::isfinite(p.eps)) throw InvalidParam("eps must be positive and finite");
    if (p.min_pts < 1) throw InvalidParam("min_pts must be at least 1");
}

// Canonical expansion: seeds scan ascending point ids, neighbor lists are
// ascending, and the queue is FIFO. Any backend that reports the same
// neighbor sets therefore produces the same labeling, border points
// included.
template <typename NeighborFn>
Labeling expand_clusters(std::size_t n, int min_pts, NeighborFn&& neigh) {
    Labeling out;
    out.labels.assign(n, kNoise);
    std::vector<int> queue;
    for (std::size_t i = 0; i < n; ++i) {
        if (out.labels[i] != kNoise) continue;
        const std::vector<int> ni = neigh(static_cast<int>(i));
        if (static_cast<int>(ni.size()) < min_pts) continue;  // not core; maybe border later
        out.labels[i] = out.n_clusters;
        queue.assign(1, static_cast<int>(i));
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int j = queue[head];
            const std::vector<int> nj = head == 0 ? ni : neigh(j);
            if (static_cast<int>(nj.size()) < min_pts) continue;  // border: claimed, not expanded
            for (const int nb : nj) {
                if (out.labels[static_cast<std::size_t>(nb)] == kNoise) {
                    out.labels[static_cast<std::size_t>(nb)] = out.n_clusters;
                    queue.push_back(nb);
                }
            }
        }
        ++out.n_clusters;
    }
    return out;
}

Labeling dbscan_brute(std::span<const Point2D> points, const DbscanParams& p) {
    const std::size_t n = points.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = points[i].x;
        ys[i] = points[i].y;
    }
    const double r_sq = p.eps * p.eps;
    return expand_clusters(n, p.min_pts, [&](int i) {
        std::vector<int> out;
        kernels::collect_within(xs, ys, points[static_cast<std::size_t>(i)], r_sq, 0, out);
        return out;
    });
}

Labeling dbscan_grid(std::span<const Point2D> points, const DbscanParams& p) {
    const GridIndex g = build_grid_index(points, p.eps);
    return expand_clusters(points.size(), p.min_pts, [&](int i) {
        return region_query(g, points, i, p.eps);
    });
}

} // namespace

Labeling dbscan(std::span<const Point2D> points, const DbscanParams& params) {
    validate(params);
    switch (params.backend) {
        case DbscanBackend::brute_force:
            return dbscan_brute(points, params);
        case DbscanBackend::distance_matrix:
            return dbscan_distance_matrix(points, params).labeling;
        case DbscanBackend::grid_index:
        default:
            return dbscan_grid(points, params);
    }
}

DbscanMatrixResult dbscan_distance_matrix(std::span<const Point2D> points,
                                          const DbscanParams& params, std::size_t max_points) {
    validate(params);
    const std::size_t n = points.size();
    if (n > max_points) {
        throw MemoryBudgetExceeded("distance matrix over " + std::to_string(max_points) +
                                   " points (got " + std::to_string(n) + ")");
    }
    using clock = std::chrono::steady_clock;
    DbscanMatrixResult res;

    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> adj;
    const auto t0 = clock::now();
    {
        std::vector<double> xs(n), ys(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = points[i].x;
            ys[i] = points[i].y;
        }
        adj.assign(words * n, 0);
        const double r_sq = params.eps * params.eps;
        std::vector<double> d2(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Full row of pairwise distances; the build cost is the point.
            kernels::dist_sq_batch(xs, ys, points[i], d2);
            std::uint64_t* row = adj.data() + i * words;
            for (std::size_t j = 0; j < n; ++j) {
                if (d2[j] <= r_sq) row[j >> 6] |= std::uint64_t(1) << (j & 63);
            }
        }
    }
    const auto t1 = clock::now();

    res.labeling = expand_clusters(n, params.min_pts, [&](int i) {
        std::vector<int> out;
        const std::uint64_t* row = adj.data() + static_cast<std::size_t>(i) * words;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = row[w];
            while (bits != 0) {
                const int b = __builtin_ctzll(bits);
                out.push_back(static_cast<int>(w * 64) + b);
                bits &= bits - 1;
            }
        }
        return out;
    });
    const auto t2 = clock::now();

    res.matrix_build_seconds = std::chrono::duration<double>(t1 - t0).count();
    res.cluster_seconds = std::chrono::duration<double>(t2 - t1).count();
    return res;
}

} // namespace ddc
