#include "ddc/engine/merge.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "ddc/error.hpp"

namespace ddc {

MergePolicy::Kind policy_kind_from_name(const std::string& name) {
    if (name == "polygon_overlap") return MergePolicy::Kind::polygon_overlap;
    if (name == "boundary_proximity") return MergePolicy::Kind::boundary_proximity;
    throw InvalidParam("unknown merge policy: " + name);
}

std::string policy_kind_name(MergePolicy::Kind kind) {
    return kind == MergePolicy::Kind::polygon_overlap ? "polygon_overlap" : "boundary_proximity";
}

int elect_leader(std::span<const int> group) {
    if (group.empty()) throw EmptyGroup("cannot elect a leader from an empty group");
    return *std::min_element(group.begin(), group.end());
}

namespace {

bool should_merge(const Contour& a, const Contour& b, const MergePolicy& policy) {
    if (policy.density_gate > 0.0) {
        const double hi = std::max(a.density, b.density);
        const double lo = std::min(a.density, b.density);
        if (hi > policy.density_gate * lo) return false;
    }
    if (policy.kind == MergePolicy::Kind::polygon_overlap)
        return polygons_intersect(a.polygon, b.polygon);

    double eps = policy.proximity_eps;
    if (eps <= 0.0) {
        eps = 0.0;
        if (a.eps_hint) eps = std::max(eps, *a.eps_hint);
        if (b.eps_hint) eps = std::max(eps, *b.eps_hint);
        if (eps <= 0.0)
            throw ConfigError("boundary_proximity: no proximity_eps and no eps hints to resolve it");
    }
    return min_vertex_distance(a.polygon, b.polygon) <= eps;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

std::vector<std::vector<int>> find_overlaps(std::span<const Contour> contours,
                                            const MergePolicy& policy) {
    const int n = static_cast<int>(contours.size());
    Dsu dsu(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (should_merge(contours[static_cast<std::size_t>(i)],
                             contours[static_cast<std::size_t>(j)], policy))
                dsu.unite(i, j);

    std::vector<std::vector<int>> components;
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const int root = dsu.find(i);
        if (slot[static_cast<std::size_t>(root)] < 0) {
            slot[static_cast<std::size_t>(root)] = static_cast<int>(components.size());
            components.emplace_back();
        }
        components[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(i);
    }
    return components;
}

LocalModel merge_group(std::span<const LocalModel> models, const MergePolicy& policy,
                       double lambda_norm) {
    if (models.empty()) throw EmptyGroup("merge_group needs at least one model");
    std::vector<int> ids;
    ids.reserve(models.size());
    for (const LocalModel& m : models) ids.push_back(m.node_id);
    const int leader = elect_leader(ids);

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Contour> pool;
    for (const LocalModel& m : models)
        pool.insert(pool.end(), m.contours.begin(), m.contours.end());

    while (pool.size() > 1) {
        const std::vector<std::vector<int>> components = find_overlaps(pool, policy);
        if (components.size() == pool.size()) break;  // all singletons: fixpoint
        std::vector<Contour> next;
        next.reserve(components.size());
        std::vector<Contour> group;
        for (const std::vector<int>& comp : components) {
            if (comp.size() == 1) {
                next.push_back(std::move(pool[static_cast<std::size_t>(comp[0])]));
                continue;
            }
            group.clear();
            for (const int idx : comp) group.push_back(pool[static_cast<std::size_t>(idx)]);
            next.push_back(merge_contours(group, lambda_norm));
        }
        pool = std::move(next);
    }
    for (Contour& c : pool) c.source_node = leader;

    LocalModel out;
    out.node_id = leader;
    out.contours = std::move(pool);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.bytes_estimate = contours_bytes(out.contours);
    return out;
}

} // namespace ddc
