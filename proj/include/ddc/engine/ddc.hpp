#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ddc/data/generate.hpp"
#include "ddc/data/partition.hpp"
#include "ddc/engine/merge.hpp"

namespace ddc {

struct TopologyConfig {
    int n_nodes = 1;
    int degree = 2;  // group size per aggregation level

    /// Tree height: ceil(log_degree(n_nodes)); 0 for a single node.
    int levels() const;
};

struct MergeRecord {
    int level = 0;   // 1-based aggregation level
    int group = 0;   // group index within the level
    int leader = 0;
    int contours_in = 0;
    int contours_out = 0;
    std::size_t bytes = 0;  // serialized contours shipped to the leader
};

struct GlobalModel {
    std::vector<Contour> contours;
    std::vector<MergeRecord> merge_trace;
    double local_makespan = 0.0;  // max leaf-phase duration
    double merge_seconds = 0.0;   // sum over levels of the slowest group merge
    double makespan = 0.0;        // local_makespan + merge_seconds
    std::size_t total_bytes = 0;  // all bytes shipped across all levels
    std::size_t leaf_vertices = 0;  // distinct contour vertices after phase one

    int n_clusters() const { return static_cast<int>(contours.size()); }
};

struct RunOptions {
    TopologyConfig topology;
    MergePolicy policy;
    double lambda_norm = 0.3;
    PartitionStrategy strategy = PartitionStrategy::spatial_grid;
    std::uint64_t partition_seed = 0;
    int threads = 0;  // leaf-phase worker cap; 0 = hardware concurrency
};

/// The full two-phase procedure: partition, local clustering on every node
/// (conceptually parallel; makespan takes the slowest), then level-by-level
/// merging of consecutive-id groups of `degree` until one model remains.
/// nodes[i].node_id must equal i and nodes must have n_nodes entries.
/// Throws ConfigError on inconsistent configuration.
GlobalModel run_ddc(const Dataset& dataset, std::span<const NodeParams> nodes,
                    const RunOptions& options);

/// Labels every dataset point by the contour covering it; overlaps resolve
/// to the densest contour, uncovered points are noise.
Labeling assign_points(const GlobalModel& global, const Dataset& dataset);

} // namespace ddc
