#include "ddc/eval/eval.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "ddc/error.hpp"

namespace ddc {

double adjusted_rand_index(const Labeling& reference, const Labeling& other, bool exclude_noise) {
    if (reference.labels.size() != other.labels.size())
        throw LengthMismatch("labelings differ in length");

    // Contingency counts over the kept points.
    std::map<std::pair<int, int>, std::int64_t> cell;
    std::map<int, std::int64_t> row, col;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < reference.labels.size(); ++i) {
        const int a = reference.labels[i];
        if (exclude_noise && a == kNoise) continue;
        const int b = other.labels[i];
        ++cell[{a, b}];
        ++row[a];
        ++col[b];
        ++n;
    }
    if (n < 2) return 1.0;

    auto choose2 = [](std::int64_t m) { return static_cast<double>(m) * static_cast<double>(m - 1) / 2.0; };
    double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [key, m] : cell) sum_cells += choose2(m);
    for (const auto& [key, m] : row) sum_rows += choose2(m);
    for (const auto& [key, m] : col) sum_cols += choose2(m);

    const double expected = sum_rows * sum_cols / choose2(n);
    const double maximum = 0.5 * (sum_rows + sum_cols);
    if (maximum == expected) return 1.0;  // degenerate: identical trivial partitions
    return (sum_cells - expected) / (maximum - expected);
}

double reduction_ratio(std::span<const LocalModel> models, std::size_t dataset_size) {
    if (dataset_size == 0) throw InvalidParam("reduction_ratio: dataset_size must be positive");
    std::vector<Point2D> verts;
    for (const LocalModel& m : models)
        for (const Contour& c : m.contours)
            verts.insert(verts.end(), c.polygon.ring.begin(), c.polygon.ring.end());
    return static_cast<double>(dedup_points(verts).size()) / static_cast<double>(dataset_size);
}

Labeling oracle_single_machine(const Dataset& dataset, const NodeParams& params) {
    if (params.backend == Backend::dbscan) return dbscan(dataset.points, params.dbscan);
    return kmeans(dataset.points, params.kmeans).labeling;
}

std::string report_json(const EvalReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\n"
                  "  \"ari\": %.6f,\n"
                  "  \"n_clusters_found\": %d,\n"
                  "  \"n_clusters_expected\": %d,\n"
                  "  \"reduction_ratio\": %.6f,\n"
                  "  \"local_makespan_s\": %.6f,\n"
                  "  \"merge_s\": %.6f,\n"
                  "  \"total_s\": %.6f,\n"
                  "  \"bytes_exchanged\": %zu\n"
                  "}\n",
                  r.ari, r.n_clusters_found, r.n_clusters_expected, r.reduction,
                  r.local_makespan_s, r.merge_s, r.total_s, r.bytes);
    return buf;
}

std::string bench_csv(std::span<const BenchRow> rows) {
    std::ostringstream os;
    os << "NAME,SIZE,DDC-KMEANS,DDC-DBSCAN-W,DDC-DBSCAN-WO\n";
    for (const BenchRow& r : rows) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%zu,%.3f,%.3f,%.3f\n", r.name.c_str(), r.size,
                      r.kmeans_ms, r.dbscan_w_ms, r.dbscan_wo_ms);
        os << buf;
    }
    return os.str();
}

} // namespace ddc
