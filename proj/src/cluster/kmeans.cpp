#include "ddc/cluster/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>

#include "ddc/error.hpp"
#include "ddc/kernels.hpp"

namespace ddc {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection; avoids modulo bias.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % bound;
}

// Distance-weighted seeding: first centroid uniform, each next drawn with
// probability proportional to squared distance from the nearest chosen one.
std::vector<Point2D> seed_centroids(std::span<const Point2D> pts, int k, std::mt19937_64& rng) {
    const std::size_t n = pts.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = pts[i].x;
        ys[i] = pts[i].y;
    }

    std::vector<Point2D> cents;
    cents.reserve(static_cast<std::size_t>(k));
    cents.push_back(pts[below(rng, n)]);

    std::vector<double> best_d2(n, std::numeric_limits<double>::infinity());
    std::vector<double> d2(n);
    while (static_cast<int>(cents.size()) < k) {
        kernels::dist_sq_batch(xs, ys, cents.back(), d2);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            best_d2[i] = std::min(best_d2[i], d2[i]);
            total += best_d2[i];
        }
        // k never exceeds the distinct-point count, so some mass remains.
        const double r = uniform01(rng) * total;
        std::size_t pick = n;
        std::size_t last_pos = n;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (best_d2[i] > 0.0) last_pos = i;
            acc += best_d2[i];
            if (acc > r && best_d2[i] > 0.0) {
                pick = i;
                break;
            }
        }
        if (pick == n) pick = last_pos;  // float tail: fall back to last viable point
        cents.push_back(pts[pick]);
    }
    return cents;
}

}  // namespace

KMeansResult kmeans(std::span<const Point2D> points, const KMeansParams& params) {
    const std::size_t n = points.size();
    if (n == 0) throw DegenerateInput("kmeans: empty input");
    if (params.k < 1) throw InvalidParam("kmeans: k must be >= 1");
    if (params.max_iter < 1) throw InvalidParam("kmeans: max_iter must be >= 1");

    const std::vector<Point2D> uniq = dedup_points(points);
    if (static_cast<std::size_t>(params.k) > uniq.size())
        throw InvalidParam("kmeans: k exceeds number of distinct points");

    const BBox bb = bounding_box(points);
    const double tol = params.tol >= 0.0 ? params.tol : 1e-6 * bb.diagonal();
    const int k = params.k;

    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = points[i].x;
        ys[i] = points[i].y;
    }

    std::mt19937_64 rng(params.seed);
    std::vector<Point2D> centroids = seed_centroids(points, k, rng);

    KMeansResult res;
    res.labeling.labels.assign(n, 0);
    std::vector<double> point_d2(n);

    std::vector<double> cxs(static_cast<std::size_t>(k)), cys(static_cast<std::size_t>(k));
    auto assign_all = [&]() {
        for (int c = 0; c < k; ++c) {
            cxs[static_cast<std::size_t>(c)] = centroids[static_cast<std::size_t>(c)].x;
            cys[static_cast<std::size_t>(c)] = centroids[static_cast<std::size_t>(c)].y;
        }
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const int ci = kernels::nearest_centroid(points[i], cxs, cys);
            res.labeling.labels[i] = ci;
            point_d2[i] = dist_sq(points[i], centroids[static_cast<std::size_t>(ci)]);
            inertia += point_d2[i];
        }
        res.inertia_history.push_back(inertia);
    };

    auto counts_of = [&]() {
        std::vector<std::int64_t> cnt(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) ++cnt[static_cast<std::size_t>(res.labeling.labels[i])];
        return cnt;
    };

    // Move each empty cluster's centroid onto the point farthest from its
    // current centroid, skipping points already claimed this pass and points
    // coinciding with any other centroid-to-be. Returns true if any moved.
    auto reseed_empties = [&](std::vector<Point2D>& cents, const std::vector<std::int64_t>& cnt) {
        bool moved = false;
        std::vector<char> taken(n, 0);
        for (int c = 0; c < k; ++c) {
            if (cnt[static_cast<std::size_t>(c)] != 0) continue;
            std::size_t far_i = n;
            double far_d2 = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (taken[i] || point_d2[i] <= far_d2) continue;
                bool clash = false;
                for (int o = 0; o < k; ++o) {
                    if (o != c && cents[static_cast<std::size_t>(o)] == points[i]) {
                        clash = true;
                        break;
                    }
                }
                if (clash) continue;
                far_i = i;
                far_d2 = point_d2[i];
            }
            if (far_i == n) continue;  // nothing viable; leave centroid in place
            cents[static_cast<std::size_t>(c)] = points[far_i];
            taken[far_i] = 1;
            moved = true;
        }
        return moved;
    };

    for (int iter = 0; iter < params.max_iter; ++iter) {
        assign_all();
        res.iterations = iter + 1;

        const std::vector<std::int64_t> cnt = counts_of();
        std::vector<double> sx(static_cast<std::size_t>(k), 0.0), sy(static_cast<std::size_t>(k), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(res.labeling.labels[i]);
            sx[c] += xs[i];
            sy[c] += ys[i];
        }
        std::vector<Point2D> next = centroids;
        for (int c = 0; c < k; ++c) {
            const auto uc = static_cast<std::size_t>(c);
            if (cnt[uc] > 0) next[uc] = {sx[uc] / static_cast<double>(cnt[uc]), sy[uc] / static_cast<double>(cnt[uc])};
        }
        const bool reseeded = reseed_empties(next, cnt);

        double shift = 0.0;
        for (int c = 0; c < k; ++c) {
            const auto uc = static_cast<std::size_t>(c);
            shift = std::max(shift, dist(centroids[uc], next[uc]));
        }
        centroids = std::move(next);
        if (shift <= tol && !reseeded) break;
    }

    assign_all();
    // The last centroid update can strand a cluster with no points; patch by
    // reseeding and reassigning. Each pass pins the reseeded centroids to their
    // points (distance zero, coordinates unique), so this terminates.
    for (int guard = 0; guard < k; ++guard) {
        const std::vector<std::int64_t> cnt = counts_of();
        if (std::find(cnt.begin(), cnt.end(), std::int64_t{0}) == cnt.end()) break;
        if (!reseed_empties(centroids, cnt)) break;
        assign_all();
    }

    // Canonical label order: sort centroids lexicographically and remap.
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return centroids[static_cast<std::size_t>(a)] < centroids[static_cast<std::size_t>(b)];
    });
    std::vector<int> rank(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
    for (std::size_t i = 0; i < n; ++i)
        res.labeling.labels[i] = rank[static_cast<std::size_t>(res.labeling.labels[i])];
    std::vector<Point2D> sorted_cents(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) sorted_cents[static_cast<std::size_t>(r)] = centroids[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];

    res.labeling.n_clusters = k;
    res.centroids = std::move(sorted_cents);
    return res;
}

}  // namespace ddc
