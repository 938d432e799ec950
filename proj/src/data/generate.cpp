#include "ddc/data/generate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "ddc/data/io.hpp"
#include "ddc/error.hpp"

namespace ddc {

namespace {

constexpr double kTau = 6.283185307179586;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

double gauss(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTau * u2);
}

Point2D rotated(Point2D p, double cs, double sn) {
    return {p.x * cs - p.y * sn, p.x * sn + p.y * cs};
}

Point2D place(const ShapeSpec& s, Point2D local) {
    const double cs = std::cos(s.rotation);
    const double sn = std::sin(s.rotation);
    const Point2D r = rotated(local, cs, sn);
    return {s.center.x + r.x, s.center.y + r.y};
}

// Block-capital stroke tables on a unit cell; every stroke is a polyline.
const std::map<char, std::vector<std::vector<Point2D>>>& letter_strokes() {
    static const std::map<char, std::vector<std::vector<Point2D>>> table{
        {'A', {{{0, 0}, {0.5, 1}, {1, 0}}, {{0.22, 0.42}, {0.78, 0.42}}}},
        {'B',
         {{{0, 0}, {0, 1}},
          {{0, 1}, {0.65, 1}, {0.85, 0.84}, {0.85, 0.68}, {0.65, 0.52}, {0, 0.52}},
          {{0, 0.52}, {0.7, 0.52}, {0.9, 0.36}, {0.9, 0.16}, {0.7, 0}, {0, 0}}}},
        {'C', {{{0.95, 0.18}, {0.7, 0}, {0.3, 0}, {0, 0.25}, {0, 0.75}, {0.3, 1}, {0.7, 1}, {0.95, 0.82}}}},
        {'D', {{{0, 0}, {0, 1}}, {{0, 1}, {0.55, 1}, {0.9, 0.72}, {0.9, 0.28}, {0.55, 0}, {0, 0}}}},
        {'E', {{{0.9, 1}, {0, 1}, {0, 0}, {0.9, 0}}, {{0, 0.52}, {0.7, 0.52}}}},
        {'K', {{{0, 0}, {0, 1}}, {{0.9, 1}, {0, 0.45}}, {{0.3, 0.62}, {0.9, 0}}}},
        {'N', {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}}},
        {'S',
         {{{0.9, 0.85},
           {0.65, 1},
           {0.3, 1},
           {0.05, 0.82},
           {0.05, 0.66},
           {0.3, 0.52},
           {0.65, 0.48},
           {0.9, 0.33},
           {0.9, 0.17},
           {0.65, 0},
           {0.3, 0},
           {0.05, 0.15}}}},
    };
    return table;
}

struct Segment {
    Point2D a, b;
    double cum_len;  // running total including this segment
};

std::vector<Segment> text_segments(const std::string& text) {
    constexpr double kAdvance = 1.35;
    std::vector<Segment> segs;
    double total = 0.0;
    for (std::size_t c = 0; c < text.size(); ++c) {
        const auto it = letter_strokes().find(text[c]);
        if (it == letter_strokes().end())
            throw InvalidSpec(std::string("stencil_polyline: unsupported letter '") + text[c] + "'");
        const double x0 = static_cast<double>(c) * kAdvance;
        for (const auto& stroke : it->second)
            for (std::size_t i = 0; i + 1 < stroke.size(); ++i) {
                Segment s;
                s.a = {stroke[i].x + x0, stroke[i].y};
                s.b = {stroke[i + 1].x + x0, stroke[i + 1].y};
                total += dist(s.a, s.b);
                s.cum_len = total;
                segs.push_back(s);
            }
    }
    return segs;
}

void sample_shape(const ShapeSpec& s, std::mt19937_64& rng, std::vector<Point2D>& out) {
    switch (s.kind) {
        case ShapeKind::gaussian_blob:
            for (int i = 0; i < s.points; ++i)
                out.push_back(place(s, {s.scale * gauss(rng), s.scale * gauss(rng)}));
            break;
        case ShapeKind::disk:
            for (int i = 0; i < s.points; ++i) {
                const double r = s.scale * std::sqrt(uniform01(rng));
                const double t = kTau * uniform01(rng);
                out.push_back(place(s, {r * std::cos(t), r * std::sin(t)}));
            }
            break;
        case ShapeKind::oval:
            for (int i = 0; i < s.points; ++i) {
                const double r = std::sqrt(uniform01(rng));
                const double t = kTau * uniform01(rng);
                out.push_back(place(s, {s.scale * r * std::cos(t), s.scale * s.aspect * r * std::sin(t)}));
            }
            break;
        case ShapeKind::annulus: {
            const double r0 = s.scale * s.inner_ratio;
            const double span = s.sector_deg * kTau / 360.0;
            for (int i = 0; i < s.points; ++i) {
                const double r = std::sqrt(uniform(rng, r0 * r0, s.scale * s.scale));
                const double t = span * uniform01(rng);
                // rotation doubles as the sector's start angle via place().
                out.push_back(place(s, {r * std::cos(t), r * std::sin(t)}));
            }
            break;
        }
        case ShapeKind::linked_circles: {
            // Two overlapping lobes along the rotated x-axis; one cluster.
            const double a = 0.75 * s.scale;
            const double b = a * s.aspect;
            const double off = 0.55 * s.scale;
            for (int i = 0; i < s.points; ++i) {
                const double side = i < (s.points + 1) / 2 ? -1.0 : 1.0;
                const double r = std::sqrt(uniform01(rng));
                const double t = kTau * uniform01(rng);
                out.push_back(place(s, {side * off + a * r * std::cos(t), b * r * std::sin(t)}));
            }
            break;
        }
        case ShapeKind::stencil_polyline: {
            const std::vector<Segment> segs = text_segments(s.text);
            const double total = segs.back().cum_len;
            const double width = static_cast<double>(s.text.size() - 1) * 1.35 + 1.0;
            const Point2D block_center{width / 2.0, 0.5};
            for (int i = 0; i < s.points; ++i) {
                const double want = total * uniform01(rng);
                const auto it = std::lower_bound(segs.begin(), segs.end(), want,
                                                 [](const Segment& sg, double w) { return sg.cum_len < w; });
                const Segment& sg = it == segs.end() ? segs.back() : *it;
                const double seg_len = dist(sg.a, sg.b);
                const double prev = sg.cum_len - seg_len;
                const double f = seg_len > 0.0 ? (want - prev) / seg_len : 0.0;
                Point2D local{sg.a.x + f * (sg.b.x - sg.a.x) - block_center.x,
                              sg.a.y + f * (sg.b.y - sg.a.y) - block_center.y};
                local.x += 0.03 * gauss(rng);
                local.y += 0.03 * gauss(rng);
                out.push_back(place(s, {s.scale * local.x, s.scale * local.y}));
            }
            break;
        }
    }
}

void validate(const DatasetSpec& spec) {
    if (spec.shapes.empty()) throw InvalidSpec("dataset spec has no shapes");
    if (!(spec.noise_fraction >= 0.0 && spec.noise_fraction < 1.0))
        throw InvalidSpec("noise_fraction must lie in [0,1)");
    for (const ShapeSpec& s : spec.shapes) {
        if (s.points < 1) throw InvalidSpec("shape points must be >= 1");
        if (!(s.scale > 0.0) || !std::isfinite(s.scale)) throw InvalidSpec("shape scale must be positive");
        if (!std::isfinite(s.center.x) || !std::isfinite(s.center.y) || !std::isfinite(s.rotation))
            throw InvalidSpec("shape placement must be finite");
        if (!(s.aspect > 0.0 && s.aspect <= 1.0)) throw InvalidSpec("aspect must lie in (0,1]");
        if (s.kind == ShapeKind::annulus) {
            if (!(s.inner_ratio > 0.0 && s.inner_ratio < 1.0))
                throw InvalidSpec("annulus inner_ratio must lie in (0,1)");
            if (!(s.sector_deg > 0.0 && s.sector_deg <= 360.0))
                throw InvalidSpec("annulus sector_deg must lie in (0,360]");
        }
        if (s.kind == ShapeKind::stencil_polyline) {
            if (s.text.empty()) throw InvalidSpec("stencil_polyline needs text");
            text_segments(s.text);  // validates the letters
        }
    }
}

}  // namespace

Dataset generate(const DatasetSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.seed);

    Dataset ds;
    std::int64_t shape_total = 0;
    for (const ShapeSpec& s : spec.shapes) shape_total += s.points;
    ds.points.reserve(static_cast<std::size_t>(shape_total));

    for (std::size_t si = 0; si < spec.shapes.size(); ++si) {
        sample_shape(spec.shapes[si], rng, ds.points);
        ds.truth.labels.resize(ds.points.size(), static_cast<int>(si));
    }

    const auto noise_count = static_cast<std::int64_t>(std::llround(
        static_cast<double>(shape_total) * spec.noise_fraction / (1.0 - spec.noise_fraction)));
    if (noise_count > 0) {
        BBox box = spec.noise_bbox;
        if (box.empty()) {
            box = bounding_box(ds.points);
            const double px = 0.05 * box.width();
            const double py = 0.05 * box.height();
            box.min_x -= px;
            box.max_x += px;
            box.min_y -= py;
            box.max_y += py;
        }
        for (std::int64_t i = 0; i < noise_count; ++i)
            ds.points.push_back({uniform(rng, box.min_x, box.max_x), uniform(rng, box.min_y, box.max_y)});
        ds.truth.labels.resize(ds.points.size(), kNoise);
    }

    for (Point2D& p : ds.points) {
        p.x = quantize9(p.x);
        p.y = quantize9(p.y);
    }
    ds.truth.n_clusters = static_cast<int>(spec.shapes.size());
    return ds;
}

namespace {

ShapeSpec shape(ShapeKind kind, Point2D center, double scale, int points, double rotation = 0.0,
                double aspect = 1.0) {
    ShapeSpec s;
    s.kind = kind;
    s.center = center;
    s.scale = scale;
    s.points = points;
    s.rotation = rotation;
    s.aspect = aspect;
    return s;
}

ShapeSpec annulus(Point2D center, double scale, double inner_ratio, int points) {
    ShapeSpec s = shape(ShapeKind::annulus, center, scale, points);
    s.inner_ratio = inner_ratio;
    return s;
}

ShapeSpec letter(char ch, Point2D center, double scale, int points) {
    ShapeSpec s = shape(ShapeKind::stencil_polyline, center, scale, points);
    s.text = std::string(1, ch);
    return s;
}

Preset make_t1() {
    Preset p;
    p.name = "t1";
    p.spec.seed = 101;
    p.spec.shapes = {
        shape(ShapeKind::oval, {0, 0}, 2.2, 2800, 0.0, 0.62),
        shape(ShapeKind::oval, {8, 0}, 2.2, 2800, 0.7, 0.62),
        shape(ShapeKind::oval, {16, 0.5}, 2.2, 2800, 1.2, 0.62),
        shape(ShapeKind::oval, {3.5, 6.5}, 2.2, 2800, 1.9, 0.62),
        shape(ShapeKind::oval, {12, 7}, 2.2, 2800, 2.6, 0.62),
    };
    p.eps = 0.25;
    p.min_pts = 8;
    p.kmeans_k = 10;
    return p;
}

Preset make_t2() {
    Preset p;
    p.name = "t2";
    p.spec.seed = 102;
    p.spec.shapes = {
        shape(ShapeKind::disk, {0, 0}, 1.5, 3000),
        shape(ShapeKind::disk, {6, 0}, 1.5, 3000),
        shape(ShapeKind::disk, {0, 6}, 1.5, 3000),
        shape(ShapeKind::disk, {6, 6}, 1.5, 3000),
        shape(ShapeKind::linked_circles, {12, 3}, 2.0, 5080, 0.9),
    };
    p.eps = 0.2;
    p.min_pts = 8;
    p.kmeans_k = 10;
    return p;
}

Preset make_t3() {
    Preset p;
    p.name = "t3";
    p.spec.seed = 103;
    p.spec.shapes = {
        shape(ShapeKind::disk, {0, 0}, 1.2, 4000),
        shape(ShapeKind::disk, {5, 0}, 1.2, 4000),
        shape(ShapeKind::disk, {12.5, 1.5}, 3.5, 14000),
        shape(ShapeKind::linked_circles, {3, 8}, 2.4, 8350, 0.25, 0.55),
    };
    p.eps = 0.2;
    p.min_pts = 8;
    p.kmeans_k = 10;
    return p;
}

Preset make_t4() {
    Preset p;
    p.name = "t4";
    p.spec.seed = 104;
    p.spec.noise_fraction = 0.05;
    p.spec.shapes = {
        shape(ShapeKind::gaussian_blob, {0, 0}, 0.75, 1200),
        shape(ShapeKind::disk, {6.5, 0}, 1.5, 1400),
        shape(ShapeKind::oval, {13.5, 0.5}, 2.1, 1400, 0.55, 0.5),
        annulus({0.5, 7}, 2.1, 0.55, 1200),
        shape(ShapeKind::linked_circles, {7.5, 7}, 1.8, 1300),
        letter('S', {13.5, 6.8}, 3.0, 1100),
    };
    p.eps = 0.2;
    p.min_pts = 6;
    p.kmeans_k = 8;
    p.lambda = 0.55;
    return p;
}

Preset make_t5() {
    Preset p;
    p.name = "t5";
    p.spec.seed = 105;
    p.spec.noise_fraction = 0.04;
    p.spec.shapes = {
        annulus({0, 0}, 2.4, 0.5, 1400),
        shape(ShapeKind::disk, {0, 0}, 0.75, 900),
        annulus({6.5, 0}, 2.2, 0.5, 1300),
        shape(ShapeKind::disk, {6.5, 0}, 0.65, 800),
        shape(ShapeKind::gaussian_blob, {13, 0}, 0.6, 1000),
        shape(ShapeKind::oval, {2.8, 6.6}, 2.0, 1200, 0.35, 0.55),
        shape(ShapeKind::disk, {9, 6.5}, 1.2, 1000),
        shape(ShapeKind::linked_circles, {14.5, 6}, 1.7, 1100),
        letter('E', {-5, 4}, 2.8, 900),
    };
    p.eps = 0.2;
    p.min_pts = 6;
    p.kmeans_k = 12;
    p.lambda = 0.6;
    return p;
}

Preset make_t6() {
    Preset p;
    p.name = "t6";
    p.spec.seed = 106;
    p.spec.noise_fraction = 0.07;
    const char text[] = {'D', 'B', 'S', 'C', 'A', 'N'};
    for (int i = 0; i < 6; ++i)
        p.spec.shapes.push_back(letter(text[i], {4.5 * i, 0}, 3.2, 1240));
    p.spec.noise_bbox.expand({-4, -5});
    p.spec.noise_bbox.expand({27, 5});
    p.eps = 0.2;
    p.min_pts = 7;
    p.kmeans_k = 12;
    p.lambda = 0.4;
    return p;
}

}  // namespace

Preset preset(const std::string& name) {
    if (name == "t1") return make_t1();
    if (name == "t2") return make_t2();
    if (name == "t3") return make_t3();
    if (name == "t4") return make_t4();
    if (name == "t5") return make_t5();
    if (name == "t6") return make_t6();
    throw InvalidParam("unknown preset: " + name);
}

std::vector<std::string> preset_names() { return {"t1", "t2", "t3", "t4", "t5", "t6"}; }

} // namespace ddc
