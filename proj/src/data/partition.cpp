#include "ddc/data/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ddc/error.hpp"

namespace ddc {

namespace {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % bound;
}

// Near-square factorization: r rows x c columns with r <= c, r the largest
// divisor not above sqrt(n). Primes fall back to vertical strips (r = 1).
std::pair<int, int> grid_shape(int n) {
    int r = 1;
    for (int d = 1; d * d <= n; ++d)
        if (n % d == 0) r = d;
    return {r, n / r};
}

std::size_t cut(std::size_t total, int parts, int i) {
    return total * static_cast<std::size_t>(i) / static_cast<std::size_t>(parts);
}

}  // namespace

PartitionStrategy partition_strategy_from_name(const std::string& name) {
    if (name == "spatial_grid") return PartitionStrategy::spatial_grid;
    if (name == "random") return PartitionStrategy::random;
    if (name == "round_robin") return PartitionStrategy::round_robin;
    throw InvalidParam("unknown partition strategy: " + name);
}

std::string partition_strategy_name(PartitionStrategy s) {
    switch (s) {
        case PartitionStrategy::spatial_grid: return "spatial_grid";
        case PartitionStrategy::random: return "random";
        case PartitionStrategy::round_robin: return "round_robin";
    }
    return "?";
}

std::vector<DatasetFragment> partition(const Dataset& dataset, int n_nodes,
                                       PartitionStrategy strategy, std::uint64_t seed) {
    if (n_nodes < 1) throw InvalidParam("partition: n_nodes must be >= 1");
    const std::size_t n = dataset.points.size();
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(n_nodes));

    switch (strategy) {
        case PartitionStrategy::round_robin:
            for (std::size_t i = 0; i < n; ++i)
                groups[i % static_cast<std::size_t>(n_nodes)].push_back(static_cast<int>(i));
            break;
        case PartitionStrategy::random: {
            std::vector<int> ids(n);
            std::iota(ids.begin(), ids.end(), 0);
            std::mt19937_64 rng(seed);
            for (std::size_t i = n; i > 1; --i)
                std::swap(ids[i - 1], ids[below(rng, i)]);
            for (int g = 0; g < n_nodes; ++g) {
                const std::size_t lo = cut(n, n_nodes, g);
                const std::size_t hi = cut(n, n_nodes, g + 1);
                groups[static_cast<std::size_t>(g)].assign(ids.begin() + static_cast<std::ptrdiff_t>(lo),
                                                           ids.begin() + static_cast<std::ptrdiff_t>(hi));
            }
            break;
        }
        case PartitionStrategy::spatial_grid: {
            const auto [rows, cols] = grid_shape(n_nodes);
            std::vector<int> ids(n);
            std::iota(ids.begin(), ids.end(), 0);
            const auto& pts = dataset.points;
            std::sort(ids.begin(), ids.end(), [&](int a, int b) {
                const Point2D& pa = pts[static_cast<std::size_t>(a)];
                const Point2D& pb = pts[static_cast<std::size_t>(b)];
                if (pa.x != pb.x) return pa.x < pb.x;
                if (pa.y != pb.y) return pa.y < pb.y;
                return a < b;
            });
            for (int c = 0; c < cols; ++c) {
                const std::size_t lo = cut(n, cols, c);
                const std::size_t hi = cut(n, cols, c + 1);
                std::vector<int> strip(ids.begin() + static_cast<std::ptrdiff_t>(lo),
                                       ids.begin() + static_cast<std::ptrdiff_t>(hi));
                std::sort(strip.begin(), strip.end(), [&](int a, int b) {
                    const Point2D& pa = pts[static_cast<std::size_t>(a)];
                    const Point2D& pb = pts[static_cast<std::size_t>(b)];
                    if (pa.y != pb.y) return pa.y < pb.y;
                    if (pa.x != pb.x) return pa.x < pb.x;
                    return a < b;
                });
                const std::size_t m = strip.size();
                for (int r = 0; r < rows; ++r) {
                    const std::size_t rlo = cut(m, rows, r);
                    const std::size_t rhi = cut(m, rows, r + 1);
                    auto& g = groups[static_cast<std::size_t>(c * rows + r)];
                    g.assign(strip.begin() + static_cast<std::ptrdiff_t>(rlo),
                             strip.begin() + static_cast<std::ptrdiff_t>(rhi));
                }
            }
            break;
        }
    }

    std::vector<DatasetFragment> frags(static_cast<std::size_t>(n_nodes));
    for (int g = 0; g < n_nodes; ++g) {
        DatasetFragment& f = frags[static_cast<std::size_t>(g)];
        f.node_id = g;
        std::sort(groups[static_cast<std::size_t>(g)].begin(), groups[static_cast<std::size_t>(g)].end());
        f.origin_ids = std::move(groups[static_cast<std::size_t>(g)]);
        f.points.reserve(f.origin_ids.size());
        for (const int id : f.origin_ids) f.points.push_back(dataset.points[static_cast<std::size_t>(id)]);
    }
    return frags;
}

} // namespace ddc
