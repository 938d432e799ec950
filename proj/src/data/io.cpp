#include "ddc/data/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ddc/error.hpp"

namespace ddc {

double quantize9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

void write_points(const std::string& path, const Dataset& dataset, bool with_labels) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("cannot open for writing: " + path);
    const bool labels = with_labels && dataset.truth.labels.size() == dataset.points.size();
    std::fputs(labels ? "x,y,label\n" : "x,y\n", f);
    for (std::size_t i = 0; i < dataset.points.size(); ++i) {
        if (labels)
            std::fprintf(f, "%.9g,%.9g,%d\n", dataset.points[i].x, dataset.points[i].y,
                         dataset.truth.labels[i]);
        else
            std::fprintf(f, "%.9g,%.9g\n", dataset.points[i].x, dataset.points[i].y);
    }
    if (std::fclose(f) != 0) throw IoError("write failed: " + path);
}

namespace {

double parse_field(const std::string& tok, std::size_t line_no) {
    const char* s = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0') throw ParseError("bad number '" + tok + "'", line_no);
    return v;
}

int parse_label(const std::string& tok, std::size_t line_no) {
    const char* s = tok.c_str();
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0') throw ParseError("bad label '" + tok + "'", line_no);
    return static_cast<int>(v);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

Dataset read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);

    Dataset ds;
    std::string line;
    std::size_t line_no = 0;
    bool with_labels = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line == "x,y,label")
                with_labels = true;
            else if (line != "x,y")
                throw ParseError("expected header 'x,y[,label]', got '" + line + "'", line_no);
            continue;
        }
        const std::vector<std::string> tok = split_csv(line);
        const std::size_t want = with_labels ? 3 : 2;
        if (tok.size() != want)
            throw ParseError("expected " + std::to_string(want) + " fields, got " +
                                 std::to_string(tok.size()),
                             line_no);
        Point2D p{parse_field(tok[0], line_no), parse_field(tok[1], line_no)};
        ds.points.push_back(p);
        if (with_labels) ds.truth.labels.push_back(parse_label(tok[2], line_no));
    }
    if (line_no == 0) throw ParseError("empty file, expected a header", 1);

    if (with_labels) {
        int max_label = -1;
        for (const int l : ds.truth.labels) max_label = std::max(max_label, l);
        ds.truth.n_clusters = max_label + 1;
    }
    return ds;
}

namespace {

ShapeKind kind_from_name(const std::string& name) {
    if (name == "gaussian_blob") return ShapeKind::gaussian_blob;
    if (name == "disk") return ShapeKind::disk;
    if (name == "oval") return ShapeKind::oval;
    if (name == "annulus") return ShapeKind::annulus;
    if (name == "linked_circles") return ShapeKind::linked_circles;
    if (name == "stencil_polyline") return ShapeKind::stencil_polyline;
    throw InvalidSpec("unknown shape kind: " + name);
}

std::size_t line_of_offset(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace

DatasetSpec spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), line_of_offset(text, e.byte));
    }

    try {
        DatasetSpec spec;
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.noise_fraction = j.value("noise_fraction", 0.0);
        if (j.contains("bbox")) {
            const auto& b = j.at("bbox");
            if (!b.is_array() || b.size() != 4) throw InvalidSpec("bbox must be [min_x,min_y,max_x,max_y]");
            spec.noise_bbox.expand({b[0].get<double>(), b[1].get<double>()});
            spec.noise_bbox.expand({b[2].get<double>(), b[3].get<double>()});
        }
        if (!j.contains("shapes") || !j.at("shapes").is_array())
            throw InvalidSpec("spec needs a 'shapes' array");
        for (const auto& js : j.at("shapes")) {
            ShapeSpec s;
            s.kind = kind_from_name(js.at("kind").get<std::string>());
            if (js.contains("center")) {
                const auto& c = js.at("center");
                if (!c.is_array() || c.size() != 2) throw InvalidSpec("center must be [x,y]");
                s.center = {c[0].get<double>(), c[1].get<double>()};
            }
            s.rotation = js.value("rotation", 0.0);
            s.scale = js.value("scale", 1.0);
            s.points = js.value("points", 0);
            s.aspect = js.value("aspect", 1.0);
            s.inner_ratio = js.value("inner_ratio", 0.5);
            s.sector_deg = js.value("sector_deg", 360.0);
            s.text = js.value("text", std::string{});
            spec.shapes.push_back(std::move(s));
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpec(std::string("bad dataset spec: ") + e.what());
    }
}

DatasetSpec read_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return spec_from_json(ss.str());
}

} // namespace ddc
