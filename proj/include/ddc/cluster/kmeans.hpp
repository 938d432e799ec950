#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ddc/cluster/labeling.hpp"
#include "ddc/geom/point.hpp"

namespace ddc {

struct KMeansParams {
    int k = 0;
    int max_iter = 100;
    std::uint64_t seed = 0;
    double tol = -1.0;  // centroid-shift stop threshold; < 0 = 1e-6 x bbox diagonal
};

struct KMeansResult {
    Labeling labeling;               // n_clusters == k, no noise
    std::vector<Point2D> centroids;  // canonical (lexicographic) order
    std::vector<double> inertia_history;  // one entry per assignment pass
    int iterations = 0;
};

/// Lloyd iterations from seeded distance-weighted initialization. Stops when
/// the largest centroid shift drops below tol or after max_iter rounds.
/// Empty clusters are re-seeded from the farthest point, so every cluster is
/// non-empty; labels are canonicalized by centroid lexicographic order.
/// Throws InvalidParam unless 1 <= k <= number of distinct points.
KMeansResult kmeans(std::span<const Point2D> points, const KMeansParams& params);

} // namespace ddc
