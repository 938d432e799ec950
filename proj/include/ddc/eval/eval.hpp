#pragma once

#include <span>
#include <string>
#include <vector>

#include "ddc/cluster/labeling.hpp"
#include "ddc/data/generate.hpp"
#include "ddc/engine/local.hpp"

namespace ddc {

/// Chance-corrected agreement between two labelings via the contingency
/// table. exclude_noise drops every point labeled noise in `reference`
/// (noise in `other` then counts as an ordinary category). Returns 1.0 when
/// the index is degenerate but the partitions agree (e.g. both one cluster).
/// Throws LengthMismatch.
double adjusted_rand_index(const Labeling& reference, const Labeling& other,
                           bool exclude_noise = false);

/// Distinct contour vertices across the models divided by the dataset size —
/// the fraction of the data that actually travels. Throws InvalidParam for
/// dataset_size == 0.
double reduction_ratio(std::span<const LocalModel> models, std::size_t dataset_size);

/// The backend run on the unpartitioned dataset; the distributed result is
/// judged against this.
Labeling oracle_single_machine(const Dataset& dataset, const NodeParams& params);

struct EvalReport {
    double ari = 0.0;
    int n_clusters_found = 0;
    int n_clusters_expected = 0;
    double reduction = 0.0;
    double local_makespan_s = 0.0;
    double merge_s = 0.0;
    double total_s = 0.0;
    std::size_t bytes = 0;
};

std::string report_json(const EvalReport& report);

struct BenchRow {
    std::string name;
    std::size_t size = 0;
    double kmeans_ms = 0.0;
    double dbscan_w_ms = 0.0;   // distance-matrix backend (matrix build included)
    double dbscan_wo_ms = 0.0;  // grid backend, no matrix at all
};

/// CSV in the published column layout.
std::string bench_csv(std::span<const BenchRow> rows);

} // namespace ddc
