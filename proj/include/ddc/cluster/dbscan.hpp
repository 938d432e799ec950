#pragma once

#include <cstddef>
#include <span>

#include "ddc/cluster/labeling.hpp"
#include "ddc/geom/point.hpp"

namespace ddc {

enum class DbscanBackend { grid_index, distance_matrix, brute_force };

struct DbscanParams {
    double eps = 0.0;
    int min_pts = 0;
    DbscanBackend backend = DbscanBackend::grid_index;
};

/// Standard DBSCAN. Core points have at least min_pts neighbors within eps
/// (themselves included) and expand clusters via density reachability; border
/// points join the first cluster that reaches them; the rest are noise.
/// Expansion is canonical — clusters are discovered over ascending point id
/// and neighbor lists are scanned ascending — so all backends produce the
/// same labeling.
Labeling dbscan(std::span<const Point2D> points, const DbscanParams& params);

inline constexpr std::size_t kDefaultMatrixCap = 60000;

struct DbscanMatrixResult {
    Labeling labeling;
    double matrix_build_seconds = 0.0;
    double cluster_seconds = 0.0;
};

/// DBSCAN over a precomputed pairwise-distance pass: all n^2 distances are
/// evaluated up front (timed as matrix_build_seconds) and kept as an
/// eps-thresholded adjacency bitset; clustering then runs on the stored rows.
/// Throws MemoryBudgetExceeded when n exceeds max_points.
DbscanMatrixResult dbscan_distance_matrix(std::span<const Point2D> points,
                                          const DbscanParams& params,
                                          std::size_t max_points = kDefaultMatrixCap);

} // namespace ddc
