#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "ddc/data/io.hpp"
#include "ddc/geom/wkt.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// The binary under test; absent outside ctest, in which case the suite is a
// silent no-op.
std::string cli_path() {
    const char* p = std::getenv("DDC_CLI_PATH");
    return p ? std::string(p) : std::string();
}

fs::path case_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "ddc_cli_suite" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t line_count(const fs::path& p) {
    const std::string text = slurp(p);
    std::size_t n = 0;
    for (const char c : text) n += c == '\n';
    return n;
}

struct CliResult {
    int code = -1;
    std::string out, err;
};

CliResult run_cli(const std::string& args, const fs::path& dir) {
    static int call = 0;
    const fs::path so = dir / ("stdout." + std::to_string(call));
    const fs::path se = dir / ("stderr." + std::to_string(call));
    ++call;
    const std::string cmd =
        cli_path() + " " + args + " >" + so.string() + " 2>" + se.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(so);
    r.err = slurp(se);
    return r;
}

const char* kTinySpec = R"({
  "seed": 5,
  "shapes": [
    {"kind": "disk", "center": [0, 0], "scale": 1.0, "points": 150},
    {"kind": "disk", "center": [6, 0], "scale": 1.0, "points": 150},
    {"kind": "disk", "center": [12, 0], "scale": 1.0, "points": 150}
  ]
})";

fs::path write_tiny_spec(const fs::path& dir) {
    const fs::path p = dir / "tiny.json";
    std::ofstream(p) << kTinySpec;
    return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate writes a preset dataset with truth") {
    if (cli_path().empty()) return;
    const fs::path dir = case_dir("generate_preset");
    const CliResult r = run_cli("generate --preset t1 --out " + (dir / "g").string(), dir);
    CHECK(r.code == 0);
    CHECK(r.out.find("t1: 14000 points, 5 clusters") != std::string::npos);
    CHECK(line_count(dir / "g" / "points.csv") == 14001);  // header + rows
    const ddc::Dataset truth = ddc::read_points((dir / "g" / "truth.csv").string());
    CHECK(truth.points.size() == 14000);
    CHECK(truth.truth.n_clusters == 5);
    CHECK(fs::exists(dir / "g" / "resolved_config.json"));
}

TEST_CASE("generate accepts a spec file") {
    if (cli_path().empty()) return;
    const fs::path dir = case_dir("generate_spec");
    const fs::path spec = write_tiny_spec(dir);
    const CliResult r =
        run_cli("generate --spec " + spec.string() + " --out " + (dir / "g").string(), dir);
    CHECK(r.code == 0);
    CHECK(line_count(dir / "g" / "points.csv") == 451);
}

TEST_CASE("generate failure modes map to exit codes") {
    if (cli_path().empty()) return;
    const fs::path dir = case_dir("generate_fail");
    CHECK(run_cli("generate --spec " + (dir / "absent.json").string(), dir).code == 3);
    CHECK(run_cli("generate --preset t9 --out " + (dir / "g").string(), dir).code == 2);
    CHECK(run_cli("generate --out " + (dir / "g").string(), dir).code == 2);
}

TEST_CASE("run produces the full artifact set") {
    if (cli_path().empty()) return;
    const fs::path dir = case_dir("run_artifacts");
    const fs::path spec = write_tiny_spec(dir);
    const fs::path out = dir / "out1";
    const CliResult r = run_cli("run --spec " + spec.string() +
                                    " --nodes 3 --degree 2 --eps 0.35 --minpts 5 --out " +
                                    out.string(),
                                dir);
    CHECK(r.code == 0);

    const json report = json::parse(slurp(out / "report.json"));
    CHECK(report.at("n_clusters_found").get<int>() == 3);
    CHECK(report.at("n_clusters_expected").get<int>() == 3);
    CHECK(report.at("ari").get<double>() >= 0.95);
    CHECK(report.at("bytes_exchanged").get<std::size_t>() > 0);

    const ddc::Dataset assigned = ddc::read_points((out / "assignments.csv").string());
    CHECK(assigned.points.size() == 450);
    CHECK(assigned.truth.labels.size() == 450);

    std::ifstream wkt(out / "global_contours.wkt");
    CHECK(ddc::read_contours(wkt).size() == 3);

    // 3 leaves at degree 2: two level-1 groups, one level-2 group.
    const std::string trace = slurp(out / "merge_trace.jsonl");
    std::istringstream lines(trace);
    std::string line;
    int records = 0, top_level = 0;
    while (std::getline(lines, line)) {
        const json rec = json::parse(line);
        top_level = std::max(top_level, rec.at("level").get<int>());
        CHECK(rec.contains("group"));
        CHECK(rec.contains("leader"));
        CHECK(rec.contains("contours_in"));
        CHECK(rec.contains("contours_out"));
        CHECK(rec.contains("bytes"));
        ++records;
    }
    CHECK(records == 3);
    CHECK(top_level == 2);
}

TEST_CASE("rerunning from the resolved config reproduces the outputs") {
    if (cli_path().empty()) return;
    const fs::path dir = case_dir("run_rerun");
    const fs::path spec = write_tiny_spec(dir);
    const fs::path out1 = dir / "out1";
    const fs::path out2 = dir / "out2";
    CHECK(run_cli("run --spec " + spec.string() +
                      " --nodes 3 --eps 0.35 --minpts 5 --seed 11 --out " + out1.string(),
                  dir)
              .code == 0);
    CHECK(run_cli("run --config " + (out1 / "resolved_config.json").string() + " --out " +
                      out2.string(),
                  dir)
              .code == 0);
    CHECK(slurp(out1 / "assignments.csv") == slurp(out2 / "assignments.csv"));
    CHECK(slurp(out1 / "global_contours.wkt") == slurp(out2 / "global_contours.wkt"));
}

TEST_CASE("run rejects bad configuration with exit 2") {
    if (cli_path().empty()) return;
    const fs::path dir = case_dir("run_fail");
    const fs::path spec = write_tiny_spec(dir);
    const CliResult bad_backend = run_cli(
        "run --spec " + spec.string() + " --backend birch --out " + (dir / "o").string(),
        dir);
    CHECK(bad_backend.code == 2);
    CHECK(bad_backend.err.find("backend") != std::string::npos);
    CHECK(run_cli("run --spec " + spec.string() + " --degree 1 --out " +
                      (dir / "o").string(),
                  dir)
              .code == 2);
}

TEST_CASE("evaluate scores a file against itself as one") {
    if (cli_path().empty()) return;
    const fs::path dir = case_dir("evaluate");
    const fs::path spec = write_tiny_spec(dir);
    CHECK(run_cli("generate --spec " + spec.string() + " --out " + (dir / "g").string(),
                  dir)
              .code == 0);
    const std::string truth = (dir / "g" / "truth.csv").string();
    const CliResult r = run_cli("evaluate " + truth + " " + truth, dir);
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("ari").get<double>() == doctest::Approx(1.0));
    CHECK(j.at("n_points").get<std::size_t>() == 450);

    // Unlabeled input and length mismatches are rejected.
    CHECK(run_cli("evaluate " + (dir / "g" / "points.csv").string() + " " + truth, dir)
              .code == 2);
    ddc::Dataset shorter = ddc::read_points(truth);
    shorter.points.resize(100);
    shorter.truth.labels.resize(100);
    ddc::write_points((dir / "short.csv").string(), shorter, true);
    CHECK(run_cli("evaluate " + (dir / "short.csv").string() + " " + truth, dir).code == 3);
}

TEST_CASE("bench sweep emits one row per node count") {
    if (cli_path().empty()) return;
    const fs::path dir = case_dir("bench_sweep");
    const fs::path out = dir / "b";
    const CliResult r = run_cli(
        "bench --sweep --sweep-size 1500 --max-nodes 4 --out " + out.string(), dir);
    CHECK(r.code == 0);
    const std::string csv = slurp(out / "sweep.csv");
    CHECK(csv.find("NODES,LOCAL-MS,MERGE-MS,MAKESPAN-MS,BYTES") == 0);
    CHECK(line_count(out / "sweep.csv") == 4);  // header + nodes 1, 2, 4
    CHECK(fs::exists(out / "resolved_config.json"));
}

TEST_CASE("bench table covers the requested presets") {
    if (cli_path().empty()) return;
    const fs::path dir = case_dir("bench_table");
    const fs::path out = dir / "b";
    const CliResult r = run_cli("bench --preset t4 --out " + out.string(), dir);
    CHECK(r.code == 0);
    const std::string csv = slurp(out / "bench.csv");
    CHECK(csv.find("NAME,SIZE,DDC-KMEANS,DDC-DBSCAN-W,DDC-DBSCAN-WO") == 0);
    CHECK(csv.find("t4,8000,") != std::string::npos);
    CHECK(line_count(out / "bench.csv") == 2);
}

}
