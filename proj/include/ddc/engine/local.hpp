#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ddc/cluster/dbscan.hpp"
#include "ddc/cluster/kmeans.hpp"
#include "ddc/data/partition.hpp"
#include "ddc/geom/contour.hpp"

namespace ddc {

enum class Backend { dbscan, kmeans };

Backend backend_from_name(const std::string& name);
std::string backend_name(Backend b);

struct NodeParams {
    int node_id = 0;
    Backend backend = Backend::dbscan;
    DbscanParams dbscan;  // read when backend == dbscan
    KMeansParams kmeans;  // read when backend == kmeans
};

/// What a node contributes upward: its cluster contours, how long the local
/// phase took, and the wire size of the contours in serialized form.
struct LocalModel {
    int node_id = 0;
    std::vector<Contour> contours;
    double seconds = 0.0;
    std::size_t bytes_estimate = 0;
};

/// Serialized size of the contours in the exchange format.
std::size_t contours_bytes(std::span<const Contour> contours);

/// Clusters the fragment with the node's backend and wraps every non-noise
/// cluster in a contour. Clusters with fewer than three distinct points, or
/// with all points collinear, fall back to a tiny square placeholder sized
/// from the fragment's extent. Throws EmptyFragment; backend and geometry
/// errors propagate.
LocalModel run_local_phase(const DatasetFragment& fragment, const NodeParams& params,
                           double lambda_norm);

} // namespace ddc
