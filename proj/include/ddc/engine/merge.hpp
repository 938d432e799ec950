#pragma once

#include <span>
#include <string>
#include <vector>

#include "ddc/engine/local.hpp"

namespace ddc {

/// Predicate deciding whether two contours describe one global cluster.
/// polygon_overlap is the strict reading (polygons intersect); boundary
/// proximity joins contours whose closest boundary vertices are within eps,
/// which also keeps nested-but-separated clusters apart. proximity_eps <= 0
/// means "auto": each pair resolves to the max of its members' eps hints.
/// density_gate > 0 additionally requires the contour densities to be within
/// that ratio.
struct MergePolicy {
    enum class Kind { polygon_overlap, boundary_proximity };
    Kind kind = Kind::polygon_overlap;
    double proximity_eps = -1.0;
    double density_gate = 0.0;
};

MergePolicy::Kind policy_kind_from_name(const std::string& name);
std::string policy_kind_name(MergePolicy::Kind kind);

/// Minimum id wins. Throws EmptyGroup.
int elect_leader(std::span<const int> group);

/// Connected components of the policy predicate over all contour pairs,
/// singletons included, each component ascending, components ordered by
/// first member. Throws ConfigError when boundary_proximity cannot resolve
/// an eps for some pair.
std::vector<std::vector<int>> find_overlaps(std::span<const Contour> contours,
                                            const MergePolicy& policy);

/// Pools the models' contours and merges overlapping groups until no pair
/// satisfies the predicate; the result belongs to the group's leader.
/// Throws EmptyGroup for an empty model list.
LocalModel merge_group(std::span<const LocalModel> models, const MergePolicy& policy,
                       double lambda_norm);

} // namespace ddc
