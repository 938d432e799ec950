#pragma once

#include <vector>

namespace ddc {

inline constexpr int kNoise = -1;

/// Per-point cluster assignment. Ids are contiguous 0..n_clusters-1; kNoise
/// marks unclustered points.
struct Labeling {
    std::vector<int> labels;
    int n_clusters = 0;
};

} // namespace ddc
