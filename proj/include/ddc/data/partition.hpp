#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddc/data/generate.hpp"

namespace ddc {

enum class PartitionStrategy { spatial_grid, random, round_robin };

PartitionStrategy partition_strategy_from_name(const std::string& name);
std::string partition_strategy_name(PartitionStrategy s);

struct DatasetFragment {
    std::vector<Point2D> points;
    std::vector<int> origin_ids;  // indices into the parent dataset
    int node_id = 0;
};

/// Splits the dataset into n_nodes disjoint fragments covering it.
/// spatial_grid cuts the plane into near-equal-count cells (vertical strips,
/// refined on y when n_nodes factors as r x c); random shuffles ids
/// deterministically from the seed and deals near-equal blocks; round_robin
/// assigns id i to node i mod n_nodes. Fragments keep ascending origin ids.
std::vector<DatasetFragment> partition(const Dataset& dataset, int n_nodes,
                                       PartitionStrategy strategy, std::uint64_t seed);

} // namespace ddc
