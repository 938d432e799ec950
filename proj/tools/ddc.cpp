#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddc/data/io.hpp"
#include "ddc/engine/ddc.hpp"
#include "ddc/error.hpp"
#include "ddc/eval/eval.hpp"
#include "ddc/geom/wkt.hpp"

namespace fs = std::filesystem;
using ordered = nlohmann::ordered_json;

namespace {

ddc::DbscanBackend index_from_name(const std::string& name) {
    if (name == "grid_index") return ddc::DbscanBackend::grid_index;
    if (name == "distance_matrix") return ddc::DbscanBackend::distance_matrix;
    if (name == "brute_force") return ddc::DbscanBackend::brute_force;
    throw ddc::InvalidParam("unknown dbscan index: " + name);
}

std::string index_name(ddc::DbscanBackend b) {
    switch (b) {
        case ddc::DbscanBackend::grid_index: return "grid_index";
        case ddc::DbscanBackend::distance_matrix: return "distance_matrix";
        case ddc::DbscanBackend::brute_force: return "brute_force";
    }
    return "grid_index";
}

struct DatasetSource {
    std::string preset, spec_path, csv_path, truth_path;
    std::optional<std::uint64_t> seed;

    int sources() const {
        return (preset.empty() ? 0 : 1) + (spec_path.empty() ? 0 : 1) +
               (csv_path.empty() ? 0 : 1);
    }
};

// Raw knobs from config file and flags; unset fields fall back to preset
// values or built-in defaults during resolution.
struct Overrides {
    DatasetSource dataset;
    std::optional<int> nodes, degree, minpts, k, threads;
    std::optional<double> eps, lambda, proximity_eps, density_gate;
    std::optional<std::string> backend, policy, partition, dbscan_index, out;
    std::optional<std::uint64_t> seed, partition_seed, kmeans_seed;
    ordered per_node;
};

Overrides load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ddc::IoError("cannot open config: " + path);
    ordered j;
    try {
        j = ordered::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ddc::ConfigError(std::string("bad config JSON: ") + e.what());
    }
    Overrides o;
    try {
        if (j.contains("dataset")) {
            const ordered& d = j.at("dataset");
            if (d.contains("preset")) o.dataset.preset = d.at("preset").get<std::string>();
            if (d.contains("spec")) o.dataset.spec_path = d.at("spec").get<std::string>();
            if (d.contains("csv")) o.dataset.csv_path = d.at("csv").get<std::string>();
            if (d.contains("truth")) o.dataset.truth_path = d.at("truth").get<std::string>();
            if (d.contains("seed")) o.dataset.seed = d.at("seed").get<std::uint64_t>();
        }
        if (j.contains("nodes")) o.nodes = j.at("nodes").get<int>();
        if (j.contains("degree")) o.degree = j.at("degree").get<int>();
        if (j.contains("partition")) o.partition = j.at("partition").get<std::string>();
        if (j.contains("partition_seed"))
            o.partition_seed = j.at("partition_seed").get<std::uint64_t>();
        if (j.contains("backend")) o.backend = j.at("backend").get<std::string>();
        if (j.contains("dbscan")) {
            const ordered& d = j.at("dbscan");
            if (d.contains("eps")) o.eps = d.at("eps").get<double>();
            if (d.contains("minpts")) o.minpts = d.at("minpts").get<int>();
            if (d.contains("index")) o.dbscan_index = d.at("index").get<std::string>();
        }
        if (j.contains("kmeans")) {
            const ordered& d = j.at("kmeans");
            if (d.contains("k")) o.k = d.at("k").get<int>();
            if (d.contains("seed")) o.kmeans_seed = d.at("seed").get<std::uint64_t>();
        }
        if (j.contains("lambda")) o.lambda = j.at("lambda").get<double>();
        if (j.contains("policy")) {
            const ordered& p = j.at("policy");
            if (p.contains("kind")) o.policy = p.at("kind").get<std::string>();
            if (p.contains("proximity_eps"))
                o.proximity_eps = p.at("proximity_eps").get<double>();
            if (p.contains("density_gate"))
                o.density_gate = p.at("density_gate").get<double>();
        }
        if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("threads")) o.threads = j.at("threads").get<int>();
        if (j.contains("out")) o.out = j.at("out").get<std::string>();
        if (j.contains("per_node")) o.per_node = j.at("per_node");
    } catch (const nlohmann::json::exception& e) {
        throw ddc::ConfigError(std::string("bad config value: ") + e.what());
    }
    return o;
}

void merge_over(Overrides& base, const Overrides& top) {
    if (top.dataset.sources() > 0) base.dataset = top.dataset;
    else if (top.dataset.seed) base.dataset.seed = top.dataset.seed;
    auto take = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    take(base.nodes, top.nodes);
    take(base.degree, top.degree);
    take(base.minpts, top.minpts);
    take(base.k, top.k);
    take(base.threads, top.threads);
    take(base.eps, top.eps);
    take(base.lambda, top.lambda);
    take(base.proximity_eps, top.proximity_eps);
    take(base.density_gate, top.density_gate);
    take(base.backend, top.backend);
    take(base.policy, top.policy);
    take(base.partition, top.partition);
    take(base.dbscan_index, top.dbscan_index);
    take(base.out, top.out);
    take(base.seed, top.seed);
    take(base.partition_seed, top.partition_seed);
    take(base.kmeans_seed, top.kmeans_seed);
    if (!top.per_node.is_null()) base.per_node = top.per_node;
}

// Everything an experiment needs, every default made concrete.
struct RunSetup {
    DatasetSource dataset;
    std::uint64_t dataset_seed = 1;
    bool dataset_seed_explicit = false;  // false: spec/preset keeps its own
    int nodes = 5;
    int degree = 2;
    ddc::Backend backend = ddc::Backend::dbscan;
    ddc::DbscanParams db{0.2, 6, ddc::DbscanBackend::grid_index};
    ddc::KMeansParams km;
    double lambda = 0.3;
    ddc::MergePolicy policy;
    ddc::PartitionStrategy strategy = ddc::PartitionStrategy::spatial_grid;
    std::uint64_t partition_seed = 1;
    int threads = 0;
    std::string out = "ddc_out";
    ordered per_node;
};

RunSetup resolve(const Overrides& o) {
    RunSetup s;
    s.dataset = o.dataset;
    s.km.k = 8;
    s.km.seed = 1;

    if (!o.dataset.preset.empty()) {
        const ddc::Preset p = ddc::preset(o.dataset.preset);
        s.db.eps = p.eps;
        s.db.min_pts = p.min_pts;
        s.km.k = p.kmeans_k;
        s.lambda = p.lambda;
        s.dataset_seed = p.spec.seed;
    }

    if (o.backend) s.backend = ddc::backend_from_name(*o.backend);
    if (o.eps) s.db.eps = *o.eps;
    if (o.minpts) s.db.min_pts = *o.minpts;
    if (o.dbscan_index) s.db.backend = index_from_name(*o.dbscan_index);
    if (o.k) s.km.k = *o.k;
    if (o.lambda) s.lambda = *o.lambda;
    if (o.nodes) s.nodes = *o.nodes;
    if (o.degree) s.degree = *o.degree;
    if (o.threads) s.threads = *o.threads;
    if (o.out) s.out = *o.out;

    // Policy and partitioning default to the combination each backend is
    // meant to run with: DBSCAN merges by boundary proximity over a spatial
    // split; k-means over-segments, so pieces overlap and merge by polygon
    // overlap, and a random split exercises that path.
    const bool km_mode = s.backend == ddc::Backend::kmeans;
    s.policy.kind = km_mode ? ddc::MergePolicy::Kind::polygon_overlap
                            : ddc::MergePolicy::Kind::boundary_proximity;
    s.strategy = km_mode ? ddc::PartitionStrategy::random
                         : ddc::PartitionStrategy::spatial_grid;
    if (o.policy) s.policy.kind = ddc::policy_kind_from_name(*o.policy);
    if (o.proximity_eps) s.policy.proximity_eps = *o.proximity_eps;
    if (o.density_gate) s.policy.density_gate = *o.density_gate;
    if (o.partition) s.strategy = ddc::partition_strategy_from_name(*o.partition);

    if (o.dataset.seed) {
        s.dataset_seed = *o.dataset.seed;
        s.dataset_seed_explicit = true;
    }
    if (o.partition_seed) s.partition_seed = *o.partition_seed;
    if (o.kmeans_seed) s.km.seed = *o.kmeans_seed;
    if (o.seed) {  // master seed: one flag pins them all
        s.dataset_seed = *o.seed;
        s.dataset_seed_explicit = true;
        s.partition_seed = *o.seed;
        s.km.seed = *o.seed;
    }
    return s;
}

struct NamedDataset {
    ddc::Dataset data;
    std::string name;
};

NamedDataset load_dataset(RunSetup& s, bool allow_csv) {
    const int n = s.dataset.sources();
    if (n == 0) throw ddc::ConfigError("no dataset given: use --preset, --spec or --data");
    if (n > 1) throw ddc::ConfigError("give exactly one of --preset, --spec, --data");

    NamedDataset out;
    if (!s.dataset.preset.empty()) {
        ddc::Preset p = ddc::preset(s.dataset.preset);
        if (s.dataset_seed_explicit) p.spec.seed = s.dataset_seed;
        s.dataset_seed = p.spec.seed;
        out.data = ddc::generate(p.spec);
        out.name = p.name;
    } else if (!s.dataset.spec_path.empty()) {
        ddc::DatasetSpec spec = ddc::read_spec(s.dataset.spec_path);
        if (s.dataset_seed_explicit) spec.seed = s.dataset_seed;
        s.dataset_seed = spec.seed;
        out.data = ddc::generate(spec);
        out.name = fs::path(s.dataset.spec_path).stem().string();
    } else {
        if (!allow_csv) throw ddc::ConfigError("this command needs a preset or a spec file");
        out.data = ddc::read_points(s.dataset.csv_path);
        if (!s.dataset.truth_path.empty()) {
            const ddc::Dataset t = ddc::read_points(s.dataset.truth_path);
            if (t.truth.labels.empty())
                throw ddc::ConfigError("truth file has no label column");
            if (t.points.size() != out.data.points.size())
                throw ddc::LengthMismatch("truth size differs from data size");
            out.data.truth = t.truth;
        }
        out.name = fs::path(s.dataset.csv_path).stem().string();
    }
    return out;
}

ordered dataset_provenance(const RunSetup& s) {
    ordered d;
    if (!s.dataset.preset.empty()) {
        d["preset"] = s.dataset.preset;
        d["seed"] = s.dataset_seed;
    } else if (!s.dataset.spec_path.empty()) {
        d["spec"] = s.dataset.spec_path;
        d["seed"] = s.dataset_seed;
    } else {
        d["csv"] = s.dataset.csv_path;
        if (!s.dataset.truth_path.empty()) d["truth"] = s.dataset.truth_path;
    }
    return d;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ddc::IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw ddc::IoError("write failed: " + path.string());
}

void write_resolved_config(const RunSetup& s) {
    ordered j;
    j["dataset"] = dataset_provenance(s);
    j["nodes"] = s.nodes;
    j["degree"] = s.degree;
    j["partition"] = ddc::partition_strategy_name(s.strategy);
    j["partition_seed"] = s.partition_seed;
    j["backend"] = ddc::backend_name(s.backend);
    j["dbscan"] = {{"eps", s.db.eps},
                   {"minpts", s.db.min_pts},
                   {"index", index_name(s.db.backend)}};
    j["kmeans"] = {{"k", s.km.k}, {"seed", s.km.seed}};
    j["lambda"] = s.lambda;
    j["policy"] = {{"kind", ddc::policy_kind_name(s.policy.kind)},
                   {"proximity_eps", s.policy.proximity_eps},
                   {"density_gate", s.policy.density_gate}};
    j["threads"] = s.threads;
    j["out"] = s.out;
    if (!s.per_node.is_null()) j["per_node"] = s.per_node;
    write_text(fs::path(s.out) / "resolved_config.json", j.dump(2) + "\n");
}

std::vector<ddc::NodeParams> build_nodes(const RunSetup& s) {
    std::vector<ddc::NodeParams> nodes;
    for (int i = 0; i < s.nodes; ++i) {
        ddc::NodeParams p;
        p.node_id = i;
        p.backend = s.backend;
        p.dbscan = s.db;
        p.kmeans = s.km;
        nodes.push_back(p);
    }
    if (!s.per_node.is_null()) {
        if (!s.per_node.is_array()) throw ddc::ConfigError("per_node must be an array");
        try {
            for (const ordered& e : s.per_node) {
                const int id = e.at("node").get<int>();
                if (id < 0 || id >= s.nodes)
                    throw ddc::ConfigError("per_node id out of range");
                ddc::NodeParams& np = nodes[static_cast<std::size_t>(id)];
                if (e.contains("eps")) np.dbscan.eps = e.at("eps").get<double>();
                if (e.contains("minpts")) np.dbscan.min_pts = e.at("minpts").get<int>();
                if (e.contains("k")) np.kmeans.k = e.at("k").get<int>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw ddc::ConfigError(std::string("bad per_node entry: ") + e.what());
        }
    }
    return nodes;
}

ddc::RunOptions build_options(const RunSetup& s) {
    ddc::RunOptions opt;
    opt.topology = {s.nodes, s.degree};
    opt.policy = s.policy;
    opt.lambda_norm = s.lambda;
    opt.strategy = s.strategy;
    opt.partition_seed = s.partition_seed;
    opt.threads = s.threads;
    return opt;
}

int cmd_generate(RunSetup s) {
    const NamedDataset nd = load_dataset(s, false);
    fs::create_directories(s.out);
    ordered j;
    j["dataset"] = dataset_provenance(s);
    j["out"] = s.out;
    write_text(fs::path(s.out) / "resolved_config.json", j.dump(2) + "\n");
    ddc::write_points((fs::path(s.out) / "points.csv").string(), nd.data, false);
    ddc::write_points((fs::path(s.out) / "truth.csv").string(), nd.data, true);
    std::printf("%s: %zu points, %d clusters\n", nd.name.c_str(), nd.data.points.size(),
                nd.data.truth.n_clusters);
    return 0;
}

int cmd_run(RunSetup s) {
    const NamedDataset nd = load_dataset(s, true);
    const std::vector<ddc::NodeParams> nodes = build_nodes(s);
    const ddc::GlobalModel g = ddc::run_ddc(nd.data, nodes, build_options(s));
    const ddc::Labeling assigned = ddc::assign_points(g, nd.data);

    fs::create_directories(s.out);
    write_resolved_config(s);

    {
        std::ofstream wkt(fs::path(s.out) / "global_contours.wkt");
        if (!wkt) throw ddc::IoError("cannot open global_contours.wkt");
        ddc::write_contours(wkt, g.contours);
    }
    ddc::Dataset labeled;
    labeled.points = nd.data.points;
    labeled.truth = assigned;
    ddc::write_points((fs::path(s.out) / "assignments.csv").string(), labeled, true);

    std::string trace;
    for (const ddc::MergeRecord& r : g.merge_trace) {
        ordered line;
        line["level"] = r.level;
        line["group"] = r.group;
        line["leader"] = r.leader;
        line["contours_in"] = r.contours_in;
        line["contours_out"] = r.contours_out;
        line["bytes"] = r.bytes;
        trace += line.dump() + "\n";
    }
    write_text(fs::path(s.out) / "merge_trace.jsonl", trace);

    const bool has_truth = nd.data.truth.labels.size() == nd.data.points.size() &&
                           !nd.data.points.empty();
    const double reduction = nd.data.points.empty()
                                 ? 0.0
                                 : static_cast<double>(g.leaf_vertices) /
                                       static_cast<double>(nd.data.points.size());
    ordered report;
    if (has_truth)
        report["ari"] = ddc::adjusted_rand_index(nd.data.truth, assigned, true);
    else
        report["ari"] = nullptr;
    report["ari_excludes_noise"] = true;
    report["n_clusters_found"] = g.n_clusters();
    if (has_truth)
        report["n_clusters_expected"] = nd.data.truth.n_clusters;
    else
        report["n_clusters_expected"] = nullptr;
    report["reduction"] = reduction;
    report["local_makespan_s"] = g.local_makespan;
    report["merge_s"] = g.merge_seconds;
    report["total_s"] = g.makespan;
    report["bytes_exchanged"] = g.total_bytes;
    write_text(fs::path(s.out) / "report.json", report.dump(2) + "\n");

    std::printf("%s: clusters_found=%d", nd.name.c_str(), g.n_clusters());
    if (has_truth)
        std::printf(" expected=%d ari=%.4f",
                    nd.data.truth.n_clusters,
                    report["ari"].get<double>());
    std::printf(" reduction=%.4f makespan_s=%.3f bytes=%zu\n", reduction, g.makespan,
                g.total_bytes);
    std::printf("artifacts: %s\n", s.out.c_str());
    return 0;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

// One timed experiment; returns the simulated makespan components.
ddc::GlobalModel bench_run(const ddc::Dataset& ds, const RunSetup& s) {
    return ddc::run_ddc(ds, build_nodes(s), build_options(s));
}

int cmd_bench(RunSetup base, std::vector<std::string> names, int reps, bool sweep,
              std::size_t sweep_size, int max_nodes) {
    if (reps < 1) throw ddc::ConfigError("--reps must be at least 1");
    fs::create_directories(base.out);

    ordered meta;
    meta["command"] = "bench";
    meta["reps"] = reps;
    meta["nodes"] = base.nodes;
    meta["degree"] = base.degree;

    if (sweep) {
        // Fixed-size dataset, growing node count: the scalability story.
        ddc::DatasetSpec spec;
        spec.seed = 7;
        const std::size_t per = sweep_size / 5;
        for (int i = 0; i < 5; ++i) {
            ddc::ShapeSpec b;
            b.kind = ddc::ShapeKind::gaussian_blob;
            b.center = {8.0 * i, 0.0};
            b.scale = 1.0;
            b.points = i == 4 ? sweep_size - 4 * per : per;
            spec.shapes.push_back(b);
        }
        const ddc::Dataset ds = ddc::generate(spec);

        meta["sweep_size"] = sweep_size;
        meta["max_nodes"] = max_nodes;
        write_text(fs::path(base.out) / "resolved_config.json", meta.dump(2) + "\n");

        std::string csv = "NODES,LOCAL-MS,MERGE-MS,MAKESPAN-MS,BYTES\n";
        for (int n = 1; n <= max_nodes; n *= 2) {
            RunSetup s = base;
            s.nodes = n;
            s.backend = ddc::Backend::dbscan;
            s.db = {0.1, 5, ddc::DbscanBackend::grid_index};
            s.policy.kind = ddc::MergePolicy::Kind::boundary_proximity;
            s.strategy = ddc::PartitionStrategy::spatial_grid;
            std::vector<double> local, merge,total, bytes;
            std::size_t shipped = 0;
            for (int r = 0; r < reps; ++r) {
                const ddc::GlobalModel g = bench_run(ds, s);
                local.push_back(g.local_makespan * 1e3);
                merge.push_back(g.merge_seconds * 1e3);
                total.push_back(g.makespan * 1e3);
                shipped = g.total_bytes;
            }
            char row[160];
            std::snprintf(row, sizeof row, "%d,%.3f,%.3f,%.3f,%zu\n", n, median(local),
                          median(merge), median(total), shipped);
            csv += row;
        }
        write_text(fs::path(base.out) / "sweep.csv", csv);
        std::fputs(csv.c_str(), stdout);
        return 0;
    }

    if (names.empty()) names = ddc::preset_names();
    meta["presets"] = names;
    write_text(fs::path(base.out) / "resolved_config.json", meta.dump(2) + "\n");

    std::vector<ddc::BenchRow> rows;
    for (const std::string& name : names) {
        const ddc::Preset p = ddc::preset(name);
        const ddc::Dataset ds = ddc::generate(p.spec);

        RunSetup km = base;
        km.dataset.preset = name;
        km.backend = ddc::Backend::kmeans;
        km.km.k = p.kmeans_k;
        km.km.seed = 1;
        km.lambda = p.lambda;
        km.policy = ddc::MergePolicy{};  // polygon overlap
        km.strategy = ddc::PartitionStrategy::random;

        RunSetup db = base;
        db.dataset.preset = name;
        db.backend = ddc::Backend::dbscan;
        db.db = {p.eps, p.min_pts, ddc::DbscanBackend::grid_index};
        db.lambda = p.lambda;
        db.policy.kind = ddc::MergePolicy::Kind::boundary_proximity;
        db.strategy = ddc::PartitionStrategy::spatial_grid;

        RunSetup dbw = db;
        dbw.db.backend = ddc::DbscanBackend::distance_matrix;

        std::vector<double> t_km, t_w, t_wo;
        for (int r = 0; r < reps; ++r) {
            t_km.push_back(bench_run(ds, km).makespan * 1e3);
            t_w.push_back(bench_run(ds, dbw).makespan * 1e3);
            t_wo.push_back(bench_run(ds, db).makespan * 1e3);
        }
        ddc::BenchRow row;
        row.name = name;
        row.size = ds.points.size();
        row.kmeans_ms = median(t_km);
        row.dbscan_w_ms = median(t_w);
        row.dbscan_wo_ms = median(t_wo);
        rows.push_back(row);
    }
    const std::string csv = ddc::bench_csv(rows);
    write_text(fs::path(base.out) / "bench.csv", csv);
    std::fputs(csv.c_str(), stdout);
    return 0;
}

int cmd_evaluate(const std::string& found_path, const std::string& truth_path,
                 bool include_noise) {
    const ddc::Dataset found = ddc::read_points(found_path);
    const ddc::Dataset truth = ddc::read_points(truth_path);
    if (found.truth.labels.empty() || truth.truth.labels.empty())
        throw ddc::ConfigError("both files need a label column");
    const double ari =
        ddc::adjusted_rand_index(truth.truth, found.truth, !include_noise);
    ordered j;
    j["ari"] = ari;
    j["noise_excluded"] = !include_noise;
    j["n_clusters_found"] = found.truth.n_clusters;
    j["n_clusters_expected"] = truth.truth.n_clusters;
    j["n_points"] = truth.points.size();
    std::printf("%s\n", j.dump(2).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed dynamic clustering: generate, run, bench, evaluate"};
    app.require_subcommand(1);

    std::string config_path, preset_name, spec_path, data_path, truth_path;
    std::string backend, policy, partition, dbscan_index, out_dir;
    int nodes = 0, degree = 0, minpts = 0, k = 0, threads = 0, reps = 1, max_nodes = 64;
    double eps = 0, lambda = 0, proximity_eps = 0, density_gate = 0;
    std::uint64_t seed = 0;
    std::size_t sweep_size = 50000;
    bool sweep = false, include_noise = false;
    std::string eval_found, eval_truth;

    auto add_dataset_opts = [&](CLI::App* sub, bool with_csv) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--preset", preset_name, "built-in dataset preset (t1..t6)");
        sub->add_option("--spec", spec_path, "dataset spec JSON file");
        if (with_csv) {
            sub->add_option("--data", data_path, "points CSV");
            sub->add_option("--truth", truth_path, "ground-truth CSV for scoring");
        }
        sub->add_option("--seed", seed, "master seed (dataset, partition, k-means)");
        sub->add_option("--out", out_dir, "output directory");
    };
    auto add_engine_opts = [&](CLI::App* sub) {
        sub->add_option("--nodes", nodes, "node count");
        sub->add_option("--degree", degree, "aggregation tree degree");
        sub->add_option("--backend", backend, "local backend: dbscan|kmeans");
        sub->add_option("--eps", eps, "DBSCAN eps");
        sub->add_option("--minpts", minpts, "DBSCAN min_pts");
        sub->add_option("--dbscan-index", dbscan_index,
                        "grid_index|distance_matrix|brute_force");
        sub->add_option("--k", k, "k-means cluster count");
        sub->add_option("--lambda", lambda, "contour shape parameter in [0,1]");
        sub->add_option("--policy", policy, "merge: polygon_overlap|boundary_proximity");
        sub->add_option("--proximity-eps", proximity_eps,
                        "proximity threshold; <=0 derives it from eps hints");
        sub->add_option("--density-gate", density_gate,
                        "max density ratio allowed to merge; 0 disables");
        sub->add_option("--partition", partition,
                        "spatial_grid|random|round_robin");
        sub->add_option("--threads", threads, "leaf worker cap; 0 = all cores");
    };

    CLI::App* gen = app.add_subcommand("generate", "write a dataset CSV + ground truth");
    add_dataset_opts(gen, false);

    CLI::App* run = app.add_subcommand("run", "full distributed clustering run");
    add_dataset_opts(run, true);
    add_engine_opts(run);

    CLI::App* bench = app.add_subcommand("bench", "timing tables and scalability sweep");
    std::vector<std::string> bench_presets;
    bench->add_option("--preset", bench_presets, "preset(s) to time; default all");
    bench->add_option("--config", config_path, "JSON config file");
    bench->add_option("--reps", reps, "repetitions; medians are reported");
    bench->add_flag("--sweep", sweep, "node-count sweep on a fixed-size dataset");
    bench->add_option("--sweep-size", sweep_size, "sweep dataset size");
    bench->add_option("--max-nodes", max_nodes, "sweep upper node count");
    bench->add_option("--nodes", nodes, "node count for preset rows");
    bench->add_option("--degree", degree, "aggregation tree degree");
    bench->add_option("--threads", threads, "leaf worker cap");
    bench->add_option("--out", out_dir, "output directory");

    CLI::App* ev = app.add_subcommand("evaluate", "score an assignment CSV against truth");
    ev->add_option("found", eval_found, "assignments CSV (x,y,label)")->required();
    ev->add_option("truth", eval_truth, "ground-truth CSV (x,y,label)")->required();
    ev->add_flag("--include-noise", include_noise,
                 "score reference noise rows too (default: excluded)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();

        if (sub == ev) return cmd_evaluate(eval_found, eval_truth, include_noise);

        const auto has = [sub](const std::string& name) {
            const CLI::Option* o = sub->get_option_no_throw(name);
            return o != nullptr && o->count() > 0;
        };
        Overrides o;
        if (has("--config")) o = load_config(config_path);
        Overrides fl;
        if (has("--preset") && sub != bench) fl.dataset.preset = preset_name;
        if (has("--spec")) fl.dataset.spec_path = spec_path;
        if (has("--data")) fl.dataset.csv_path = data_path;
        if (has("--truth")) fl.dataset.truth_path = truth_path;
        if (has("--seed")) fl.seed = seed;
        if (has("--out")) fl.out = out_dir;
        if (has("--nodes")) fl.nodes = nodes;
        if (has("--degree")) fl.degree = degree;
        if (has("--threads")) fl.threads = threads;
        if (has("--backend")) fl.backend = backend;
        if (has("--eps")) fl.eps = eps;
        if (has("--minpts")) fl.minpts = minpts;
        if (has("--dbscan-index")) fl.dbscan_index = dbscan_index;
        if (has("--k")) fl.k = k;
        if (has("--lambda")) fl.lambda = lambda;
        if (has("--policy")) fl.policy = policy;
        if (has("--proximity-eps")) fl.proximity_eps = proximity_eps;
        if (has("--density-gate")) fl.density_gate = density_gate;
        if (has("--partition")) fl.partition = partition;
        merge_over(o, fl);
        RunSetup s = resolve(o);

        if (sub == gen) return cmd_generate(std::move(s));
        if (sub == run) return cmd_run(std::move(s));
        return cmd_bench(std::move(s), bench_presets, reps, sweep, sweep_size, max_nodes);
    } catch (const ddc::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ddc::InvalidSpec& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ddc::InvalidParam& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ddc::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
