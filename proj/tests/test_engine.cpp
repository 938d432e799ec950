#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ddc/engine/ddc.hpp"
#include "ddc/eval/eval.hpp"
#include "ddc/error.hpp"
#include "ddc/geom/wkt.hpp"
#include "test_rng.hpp"

using namespace ddc;

namespace {

DatasetFragment as_fragment(const Dataset& ds, int node = 0) {
    DatasetFragment f;
    f.node_id = node;
    f.points = ds.points;
    f.origin_ids.resize(ds.points.size());
    std::iota(f.origin_ids.begin(), f.origin_ids.end(), std::size_t{0});
    return f;
}

Dataset blob_row(int blobs, std::size_t per_blob, double spacing, std::uint64_t seed,
                 double noise_fraction = 0.0) {
    DatasetSpec spec;
    spec.seed = seed;
    spec.noise_fraction = noise_fraction;
    for (int i = 0; i < blobs; ++i) {
        ShapeSpec s;
        s.kind = ShapeKind::gaussian_blob;
        s.center = {spacing * i, (i % 2) ? 8.0 : 0.0};
        s.scale = 0.5;
        s.points = per_blob;
        spec.shapes.push_back(s);
    }
    return generate(spec);
}

NodeParams dbscan_node(int id, double eps, int min_pts) {
    NodeParams p;
    p.node_id = id;
    p.backend = Backend::dbscan;
    p.dbscan = {eps, min_pts, DbscanBackend::grid_index};
    return p;
}

std::vector<NodeParams> dbscan_nodes(int n, double eps, int min_pts) {
    std::vector<NodeParams> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back(dbscan_node(i, eps, min_pts));
    return nodes;
}

Contour square_contour(double x0, double y0, double side, std::int64_t count,
                       std::optional<double> eps = std::nullopt) {
    Polygon p;
    p.ring = {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}};
    return make_contour(p, count, 0, eps);
}

std::vector<std::string> wkt_list(std::span<const Contour> contours) {
    std::vector<std::string> out;
    for (const Contour& c : contours) out.push_back(to_wkt(c.polygon));
    return out;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
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

TEST_SUITE("engine") {

TEST_CASE("names round trip") {
    CHECK(backend_from_name("dbscan") == Backend::dbscan);
    CHECK(backend_from_name("kmeans") == Backend::kmeans);
    CHECK(backend_name(Backend::kmeans) == "kmeans");
    CHECK_THROWS_AS(backend_from_name("spectral"), InvalidParam);
    CHECK(policy_kind_from_name("polygon_overlap") == MergePolicy::Kind::polygon_overlap);
    CHECK(policy_kind_from_name("boundary_proximity") ==
          MergePolicy::Kind::boundary_proximity);
    CHECK(policy_kind_name(MergePolicy::Kind::polygon_overlap) == "polygon_overlap");
    CHECK_THROWS_AS(policy_kind_from_name("hausdorff"), InvalidParam);
}

TEST_CASE("leader is the minimum id") {
    const std::vector<int> solo{3};
    CHECK(elect_leader(solo) == 3);
    std::vector<int> group{7, 2, 5};
    CHECK(elect_leader(group) == 2);
    std::sort(group.begin(), group.end(), std::greater<>());
    CHECK(elect_leader(group) == 2);
    CHECK_THROWS_AS(elect_leader(std::vector<int>{}), EmptyGroup);
}

TEST_CASE("local phase rejects an empty fragment") {
    DatasetFragment f;
    f.node_id = 0;
    CHECK_THROWS_AS(run_local_phase(f, dbscan_node(0, 1.0, 3), 0.3), EmptyFragment);
}

TEST_CASE("local phase wraps a tight blob in one contour") {
    const Dataset ds = blob_row(1, 600, 10.0, 21);
    const DatasetFragment f = as_fragment(ds, 4);
    const LocalModel m = run_local_phase(f, dbscan_node(4, 0.4, 5), 0.3);
    CHECK(m.node_id == 4);
    REQUIRE(m.contours.size() == 1);
    CHECK(m.contours[0].source_node == 4);
    CHECK(m.contours[0].eps_hint.has_value());
    CHECK(*m.contours[0].eps_hint == doctest::Approx(0.4));
    CHECK(m.bytes_estimate > 0);
    CHECK(m.seconds >= 0.0);

    // Every non-noise point sits inside its cluster's contour.
    const Labeling ref = dbscan(ds.points, {0.4, 5, DbscanBackend::grid_index});
    std::int64_t non_noise = 0;
    for (std::size_t i = 0; i < ds.points.size(); ++i) {
        if (ref.labels[i] == kNoise) continue;
        ++non_noise;
        CHECK(point_covered(ds.points[i], m.contours[0].polygon));
    }
    CHECK(m.contours[0].point_count == non_noise);
}

TEST_CASE("local phase yields nothing when everything is noise") {
    Dataset ds;
    for (int i = 0; i < 40; ++i)
        ds.points.push_back({static_cast<double>(5 * i), static_cast<double>(i % 7)});
    const LocalModel m = run_local_phase(as_fragment(ds), dbscan_node(0, 0.01, 3), 0.3);
    CHECK(m.contours.empty());
    CHECK(m.bytes_estimate == 0);
}

TEST_CASE("two blobs with noise reduce to two small contours") {
    const Dataset ds = blob_row(2, 2000, 12.0, 9, 0.05);
    const LocalModel m = run_local_phase(as_fragment(ds), dbscan_node(0, 0.35, 6), 0.3);
    REQUIRE(m.contours.size() == 2);
    std::size_t vertices = 0;
    for (const Contour& c : m.contours) vertices += c.polygon.ring.size();
    CHECK(static_cast<double>(vertices) / static_cast<double>(ds.points.size()) <= 0.05);
}

TEST_CASE("tiny and collinear clusters fall back to placeholder squares") {
    Dataset tiny;
    tiny.points = {{0, 0}, {0, 0}, {5, 5}};
    const LocalModel a = run_local_phase(as_fragment(tiny), dbscan_node(0, 0.1, 1), 0.3);
    REQUIRE(a.contours.size() == 2);
    std::vector<std::int64_t> counts{a.contours[0].point_count, a.contours[1].point_count};
    std::sort(counts.begin(), counts.end());
    CHECK(counts == std::vector<std::int64_t>{1, 2});
    for (const Contour& c : a.contours) CHECK(c.polygon.ring.size() == 4);

    Dataset line;
    for (int i = 0; i < 5; ++i) line.points.push_back({static_cast<double>(i), 2.0});
    const LocalModel b = run_local_phase(as_fragment(line), dbscan_node(0, 1.5, 2), 0.3);
    REQUIRE(b.contours.size() == 1);
    CHECK(b.contours[0].point_count == 5);
    CHECK(b.contours[0].polygon.ring.size() == 4);
    CHECK(point_covered({2.0, 2.0}, b.contours[0].polygon));
}

TEST_CASE("kmeans backend emits one contour per cluster") {
    const Dataset ds = blob_row(3, 500, 9.0, 33);
    NodeParams p;
    p.node_id = 0;
    p.backend = Backend::kmeans;
    p.kmeans.k = 3;
    p.kmeans.seed = 5;
    const LocalModel m = run_local_phase(as_fragment(ds), p, 0.3);
    REQUIRE(m.contours.size() == 3);
    CHECK_FALSE(m.contours[0].eps_hint.has_value());
    std::int64_t total = 0;
    for (const Contour& c : m.contours) total += c.point_count;
    CHECK(total == static_cast<std::int64_t>(ds.points.size()));
}

TEST_CASE("overlap components: disjoint, chained, and randomized against union-find") {
    MergePolicy overlap;  // polygon_overlap, no gate

    std::vector<Contour> apart{square_contour(0, 0, 1, 5), square_contour(10, 0, 1, 5),
                               square_contour(20, 0, 1, 5)};
    CHECK(find_overlaps(apart, overlap) ==
          std::vector<std::vector<int>>{{0}, {1}, {2}});

    // A overlaps B, B overlaps C, A and C stay apart: one component.
    std::vector<Contour> chain{square_contour(0, 0, 2, 5), square_contour(1.5, 0, 2, 5),
                               square_contour(3.0, 0, 2, 5)};
    CHECK(polygons_intersect(chain[0].polygon, chain[2].polygon) == false);
    CHECK(find_overlaps(chain, overlap) == std::vector<std::vector<int>>{{0, 1, 2}});

    std::mt19937_64 rng(99);
    for (int round = 0; round < 5; ++round) {
        std::vector<Contour> pool;
        for (int i = 0; i < 20; ++i) {
            const double x = testrng::uniform(rng, 0.0, 10.0);
            const double y = testrng::uniform(rng, 0.0, 10.0);
            const double side = testrng::uniform(rng, 0.6, 2.4);
            pool.push_back(square_contour(x, y, side, 10 + i));
        }
        Dsu dsu(20);
        for (int i = 0; i < 20; ++i)
            for (int j = i + 1; j < 20; ++j)
                if (polygons_intersect(pool[static_cast<std::size_t>(i)].polygon,
                                       pool[static_cast<std::size_t>(j)].polygon))
                    dsu.unite(i, j);
        std::vector<std::vector<int>> want;
        std::vector<int> root_slot(20, -1);
        for (int i = 0; i < 20; ++i) {
            const int r = dsu.find(i);
            if (root_slot[static_cast<std::size_t>(r)] < 0) {
                root_slot[static_cast<std::size_t>(r)] = static_cast<int>(want.size());
                want.emplace_back();
            }
            want[static_cast<std::size_t>(root_slot[static_cast<std::size_t>(r)])].push_back(i);
        }
        CHECK(find_overlaps(pool, overlap) == want);
    }
}

TEST_CASE("proximity policy respects explicit and auto eps") {
    // Closest vertices of the two squares are 0.5 apart.
    std::vector<Contour> pair{square_contour(0, 0, 1, 5), square_contour(1.5, 0, 1, 5)};

    MergePolicy prox;
    prox.kind = MergePolicy::Kind::boundary_proximity;
    prox.proximity_eps = 0.6;
    CHECK(find_overlaps(pair, prox).size() == 1);
    prox.proximity_eps = 0.4;
    CHECK(find_overlaps(pair, prox).size() == 2);

    MergePolicy aut;
    aut.kind = MergePolicy::Kind::boundary_proximity;  // eps <= 0: per-pair max hint
    pair[0].eps_hint = 0.3;
    pair[1].eps_hint = 0.45;
    CHECK(find_overlaps(pair, aut).size() == 2);
    pair[1].eps_hint = 0.6;
    CHECK(find_overlaps(pair, aut).size() == 1);
    pair[0].eps_hint.reset();
    CHECK(find_overlaps(pair, aut).size() == 1);  // one hint still resolves
    pair[1].eps_hint.reset();
    CHECK_THROWS_AS(find_overlaps(pair, aut), ConfigError);
}

TEST_CASE("density gate blocks lopsided merges") {
    std::vector<Contour> pair{square_contour(0, 0, 2, 40), square_contour(1, 0, 2, 400)};
    MergePolicy gated;
    gated.density_gate = 5.0;
    CHECK(find_overlaps(pair, gated).size() == 2);
    gated.density_gate = 20.0;
    CHECK(find_overlaps(pair, gated).size() == 1);
    gated.density_gate = 0.0;  // disabled
    CHECK(find_overlaps(pair, gated).size() == 1);
}

TEST_CASE("merge group keeps a single model intact") {
    const Dataset ds = blob_row(1, 300, 10.0, 3);
    LocalModel m = run_local_phase(as_fragment(ds, 4), dbscan_node(4, 0.4, 5), 0.3);
    const std::vector<LocalModel> group{m};
    const LocalModel merged = merge_group(group, MergePolicy{}, 0.3);
    CHECK(merged.node_id == 4);
    CHECK(wkt_list(merged.contours) == wkt_list(m.contours));
    CHECK_THROWS_AS(merge_group(std::vector<LocalModel>{}, MergePolicy{}, 0.3), EmptyGroup);
}

TEST_CASE("merge group concatenates disjoint models under the leader") {
    LocalModel a;
    a.node_id = 6;
    a.contours = {square_contour(0, 0, 1, 5), square_contour(3, 0, 1, 5)};
    LocalModel b;
    b.node_id = 2;
    b.contours = {square_contour(10, 0, 1, 5)};
    LocalModel empty_model;
    empty_model.node_id = 9;
    const std::vector<LocalModel> group{a, b, empty_model};
    const LocalModel merged = merge_group(group, MergePolicy{}, 0.3);
    CHECK(merged.node_id == 2);
    CHECK(merged.contours.size() == 3);
    for (const Contour& c : merged.contours) CHECK(c.source_node == 2);
    CHECK(merged.bytes_estimate == contours_bytes(merged.contours));
}

TEST_CASE("ring cluster split across two nodes merges back to one contour") {
    DatasetSpec spec;
    spec.seed = 77;
    ShapeSpec ring;
    ring.kind = ShapeKind::annulus;
    ring.center = {0, 0};
    ring.scale = 2.0;
    ring.inner_ratio = 0.5;
    ring.points = 800;
    spec.shapes.push_back(ring);
    const Dataset ds = generate(spec);

    DatasetFragment left, right;
    left.node_id = 0;
    right.node_id = 1;
    for (std::size_t i = 0; i < ds.points.size(); ++i) {
        DatasetFragment& side = ds.points[i].x < 0 ? left : right;
        side.points.push_back(ds.points[i]);
        side.origin_ids.push_back(i);
    }
    REQUIRE(left.points.size() > 100);
    REQUIRE(right.points.size() > 100);

    const std::vector<LocalModel> models{
        run_local_phase(left, dbscan_node(0, 0.3, 5), 0.3),
        run_local_phase(right, dbscan_node(1, 0.3, 5), 0.3)};
    REQUIRE(models[0].contours.size() == 1);
    REQUIRE(models[1].contours.size() == 1);

    MergePolicy policy;
    policy.kind = MergePolicy::Kind::boundary_proximity;  // auto eps from hints
    const LocalModel merged = merge_group(models, policy, 0.3);
    CHECK(merged.node_id == 0);
    CHECK(merged.contours.size() == 1);
    CHECK(merged.contours[0].point_count ==
          models[0].contours[0].point_count + models[1].contours[0].point_count);
}

TEST_CASE("topology levels") {
    CHECK(TopologyConfig{1, 2}.levels() == 0);
    CHECK(TopologyConfig{2, 2}.levels() == 1);
    CHECK(TopologyConfig{5, 2}.levels() == 3);
    CHECK(TopologyConfig{8, 2}.levels() == 3);
    CHECK(TopologyConfig{9, 3}.levels() == 2);
    CHECK(TopologyConfig{3, 5}.levels() == 1);
    CHECK(TopologyConfig{64, 4}.levels() == 3);
}

TEST_CASE("run rejects inconsistent configuration") {
    const Dataset ds = blob_row(1, 50, 10.0, 8);
    std::vector<NodeParams> nodes = dbscan_nodes(2, 0.4, 3);
    RunOptions opt;
    opt.topology = {2, 2};
    opt.policy.kind = MergePolicy::Kind::boundary_proximity;

    RunOptions bad = opt;
    bad.topology.n_nodes = 3;  // nodes.size() disagrees
    CHECK_THROWS_AS(run_ddc(ds, nodes, bad), ConfigError);
    bad = opt;
    bad.topology.degree = 1;
    CHECK_THROWS_AS(run_ddc(ds, nodes, bad), ConfigError);
    bad = opt;
    bad.topology.n_nodes = 0;
    CHECK_THROWS_AS(run_ddc(ds, std::vector<NodeParams>{}, bad), ConfigError);
    bad = opt;
    bad.lambda_norm = 1.5;
    CHECK_THROWS_AS(run_ddc(ds, nodes, bad), ConfigError);

    std::vector<NodeParams> misnumbered = nodes;
    misnumbered[1].node_id = 7;
    CHECK_THROWS_AS(run_ddc(ds, misnumbered, opt), ConfigError);
}

TEST_CASE("single node run is the local phase verbatim") {
    const Dataset ds = blob_row(2, 400, 12.0, 13);
    RunOptions opt;
    opt.topology = {1, 2};
    opt.policy.kind = MergePolicy::Kind::boundary_proximity;
    const GlobalModel g = run_ddc(ds, dbscan_nodes(1, 0.35, 5), opt);
    CHECK(g.merge_trace.empty());
    CHECK(g.merge_seconds == 0.0);
    CHECK(g.makespan == g.local_makespan);
    CHECK(g.total_bytes == 0);

    const LocalModel solo = run_local_phase(as_fragment(ds), dbscan_node(0, 0.35, 5), 0.3);
    CHECK(wkt_list(g.contours) == wkt_list(solo.contours));
}

TEST_CASE("five separated blobs over five nodes come back as five clusters") {
    const Dataset ds = blob_row(5, 2000, 5.0, 55);
    RunOptions opt;
    opt.topology = {5, 2};
    opt.policy.kind = MergePolicy::Kind::boundary_proximity;
    const GlobalModel g = run_ddc(ds, dbscan_nodes(5, 0.35, 6), opt);
    CHECK(g.n_clusters() == 5);

    // Trace shape: 5 -> 3 -> 2 -> 1 under degree 2.
    REQUIRE(g.merge_trace.size() == 6);
    std::size_t traced_bytes = 0;
    int max_level = 0;
    for (const MergeRecord& r : g.merge_trace) {
        CHECK(r.level >= 1);
        CHECK(r.contours_in >= r.contours_out);
        max_level = std::max(max_level, r.level);
        traced_bytes += r.bytes;
    }
    CHECK(max_level == opt.topology.levels());
    CHECK(g.total_bytes == traced_bytes);
    CHECK(g.makespan == doctest::Approx(g.local_makespan + g.merge_seconds));
    CHECK(g.leaf_vertices > 0);
    CHECK(static_cast<double>(g.leaf_vertices) / static_cast<double>(ds.points.size()) <=
          0.05);

    // Assignment agrees with the generator truth on the vast majority.
    const Labeling assigned = assign_points(g, ds);
    CHECK(adjusted_rand_index(ds.truth, assigned, true) >= 0.95);
}

TEST_CASE("aggregation degree does not change the outcome") {
    const Dataset ds = blob_row(5, 1200, 5.0, 56);
    std::vector<int> counts;
    std::vector<std::vector<std::string>> shapes;
    for (const int degree : {2, 3, 5}) {
        RunOptions opt;
        opt.topology = {5, degree};
        opt.policy.kind = MergePolicy::Kind::boundary_proximity;
        const GlobalModel g = run_ddc(ds, dbscan_nodes(5, 0.35, 6), opt);
        counts.push_back(g.n_clusters());
        std::vector<std::string> w = wkt_list(g.contours);
        std::sort(w.begin(), w.end());
        shapes.push_back(std::move(w));
    }
    CHECK(counts == std::vector<int>{5, 5, 5});
    CHECK(shapes[0] == shapes[1]);
    CHECK(shapes[1] == shapes[2]);
}

TEST_CASE("repeated runs and thread caps are bit-identical") {
    const Dataset ds = blob_row(4, 900, 6.0, 57, 0.03);
    RunOptions opt;
    opt.topology = {4, 2};
    opt.policy.kind = MergePolicy::Kind::boundary_proximity;
    opt.threads = 1;
    const std::vector<NodeParams> nodes = dbscan_nodes(4, 0.35, 6);
    const GlobalModel a = run_ddc(ds, nodes, opt);
    opt.threads = 2;
    const GlobalModel b = run_ddc(ds, nodes, opt);
    const GlobalModel c = run_ddc(ds, nodes, opt);

    CHECK(wkt_list(a.contours) == wkt_list(b.contours));
    CHECK(wkt_list(b.contours) == wkt_list(c.contours));
    REQUIRE(a.merge_trace.size() == b.merge_trace.size());
    for (std::size_t i = 0; i < a.merge_trace.size(); ++i) {
        CHECK(a.merge_trace[i].level == b.merge_trace[i].level);
        CHECK(a.merge_trace[i].group == b.merge_trace[i].group);
        CHECK(a.merge_trace[i].leader == b.merge_trace[i].leader);
        CHECK(a.merge_trace[i].contours_in == b.merge_trace[i].contours_in);
        CHECK(a.merge_trace[i].contours_out == b.merge_trace[i].contours_out);
        CHECK(a.merge_trace[i].bytes == b.merge_trace[i].bytes);
    }
    CHECK(a.total_bytes == b.total_bytes);
    CHECK(a.leaf_vertices == b.leaf_vertices);
}

TEST_CASE("nodes can outnumber the points") {
    Dataset ds;
    for (int i = 0; i < 10; ++i)
        ds.points.push_back({static_cast<double>(i) * 0.1, 0.5});
    RunOptions opt;
    opt.topology = {12, 3};
    opt.strategy = PartitionStrategy::round_robin;
    opt.policy.kind = MergePolicy::Kind::boundary_proximity;
    const GlobalModel g = run_ddc(ds, dbscan_nodes(12, 10.0, 1), opt);
    CHECK(g.n_clusters() == 1);
}

TEST_CASE("assignment prefers the densest covering contour") {
    GlobalModel g;
    g.contours.push_back(square_contour(0, 0, 10, 100));   // density 1
    g.contours.push_back(square_contour(4, 4, 2, 100));    // density 25, nested
    Dataset ds;
    ds.points = {{5, 5}, {1, 1}, {20, 20}};
    const Labeling l = assign_points(g, ds);
    CHECK(l.labels == std::vector<int>{1, 0, kNoise});
    CHECK(l.n_clusters == 2);
}

TEST_CASE("single node assignment matches the backend on covered points") {
    const Dataset ds = blob_row(3, 800, 7.0, 58, 0.04);
    RunOptions opt;
    opt.topology = {1, 2};
    opt.policy.kind = MergePolicy::Kind::boundary_proximity;
    const GlobalModel g = run_ddc(ds, dbscan_nodes(1, 0.35, 6), opt);
    const Labeling assigned = assign_points(g, ds);
    const Labeling oracle = dbscan(ds.points, {0.35, 6, DbscanBackend::grid_index});
    // Clusters found on the one node are exactly the backend's; every
    // non-noise point lies in its own cluster's contour.
    CHECK(adjusted_rand_index(oracle, assigned, true) >= 0.999);
}

}
