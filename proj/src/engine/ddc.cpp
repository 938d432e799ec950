#include "ddc/engine/ddc.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "ddc/error.hpp"

namespace ddc {

int TopologyConfig::levels() const {
    int lev = 0;
    std::int64_t cover = 1;
    while (cover < n_nodes) {
        cover *= degree;
        ++lev;
    }
    return lev;
}

namespace {

// Runs job(i) for i in [0, count) on up to `threads` workers, storing no
// shared state except what job writes to its own slot. Rethrows the first
// job exception after all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
    if (count == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const auto want = static_cast<std::size_t>(threads > 0 ? threads : static_cast<int>(hw));
    const std::size_t n_workers = std::min(count, std::max<std::size_t>(1, want));

    if (n_workers == 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto body = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                job(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

GlobalModel run_ddc(const Dataset& dataset, std::span<const NodeParams> nodes,
                    const RunOptions& options) {
    const int n_nodes = options.topology.n_nodes;
    if (n_nodes < 1) throw ConfigError("n_nodes must be >= 1");
    if (options.topology.degree < 2) throw ConfigError("degree must be >= 2");
    if (static_cast<int>(nodes.size()) != n_nodes)
        throw ConfigError("need one NodeParams per node");
    for (int i = 0; i < n_nodes; ++i)
        if (nodes[static_cast<std::size_t>(i)].node_id != i)
            throw ConfigError("node params must be ordered by node_id");
    if (!(options.lambda_norm >= 0.0 && options.lambda_norm <= 1.0))
        throw ConfigError("lambda_norm must lie in [0,1]");

    const std::vector<DatasetFragment> fragments =
        partition(dataset, n_nodes, options.strategy, options.partition_seed);

    GlobalModel global;
    std::vector<LocalModel> current(static_cast<std::size_t>(n_nodes));
    parallel_for(static_cast<std::size_t>(n_nodes), options.threads, [&](std::size_t i) {
        if (fragments[i].points.empty()) {
            current[i].node_id = static_cast<int>(i);  // idle node, nothing to report
            return;
        }
        current[i] = run_local_phase(fragments[i], nodes[i], options.lambda_norm);
    });
    for (const LocalModel& m : current)
        global.local_makespan = std::max(global.local_makespan, m.seconds);
    {
        std::vector<Point2D> verts;
        for (const LocalModel& m : current)
            for (const Contour& c : m.contours)
                verts.insert(verts.end(), c.polygon.ring.begin(), c.polygon.ring.end());
        global.leaf_vertices = dedup_points(verts).size();
    }

    const int degree = options.topology.degree;
    int level = 0;
    while (current.size() > 1) {
        ++level;
        const std::size_t n_groups = (current.size() + static_cast<std::size_t>(degree) - 1) /
                                     static_cast<std::size_t>(degree);
        std::vector<LocalModel> merged(n_groups);
        std::vector<MergeRecord> records(n_groups);
        parallel_for(n_groups, options.threads, [&](std::size_t g) {
            const std::size_t lo = g * static_cast<std::size_t>(degree);
            const std::size_t hi = std::min(current.size(), lo + static_cast<std::size_t>(degree));
            const std::span<const LocalModel> group(current.data() + lo, hi - lo);
            merged[g] = merge_group(group, options.policy, options.lambda_norm);

            MergeRecord rec;
            rec.level = level;
            rec.group = static_cast<int>(g);
            rec.leader = merged[g].node_id;
            for (const LocalModel& m : group) {
                rec.contours_in += static_cast<int>(m.contours.size());
                if (m.node_id != rec.leader) rec.bytes += m.bytes_estimate;
            }
            rec.contours_out = static_cast<int>(merged[g].contours.size());
            records[g] = rec;
        });
        double level_max = 0.0;
        for (const LocalModel& m : merged) level_max = std::max(level_max, m.seconds);
        global.merge_seconds += level_max;
        for (const MergeRecord& r : records) {
            global.total_bytes += r.bytes;
            global.merge_trace.push_back(r);
        }
        current = std::move(merged);
    }

    global.contours = std::move(current.front().contours);
    global.makespan = global.local_makespan + global.merge_seconds;
    return global;
}

Labeling assign_points(const GlobalModel& global, const Dataset& dataset) {
    Labeling out;
    out.labels.assign(dataset.points.size(), kNoise);
    out.n_clusters = global.n_clusters();
    for (std::size_t i = 0; i < dataset.points.size(); ++i) {
        int best = kNoise;
        double best_density = 0.0;
        for (std::size_t c = 0; c < global.contours.size(); ++c) {
            const Contour& ct = global.contours[c];
            if (ct.density <= best_density && best != kNoise) continue;  // cheap reject first
            if (point_covered(dataset.points[i], ct.polygon)) {
                best = static_cast<int>(c);
                best_density = ct.density;
            }
        }
        out.labels[i] = best;
    }
    return out;
}

} // namespace ddc
