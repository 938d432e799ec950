#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddc/cluster/labeling.hpp"
#include "ddc/geom/point.hpp"

namespace ddc {

enum class ShapeKind { gaussian_blob, disk, oval, annulus, linked_circles, stencil_polyline };

struct ShapeSpec {
    ShapeKind kind = ShapeKind::gaussian_blob;
    Point2D center{0.0, 0.0};
    double rotation = 0.0;  // radians, counterclockwise
    double scale = 1.0;
    int points = 0;
    double aspect = 1.0;        // oval / linked_circles: minor-to-major axis ratio
    double inner_ratio = 0.5;   // annulus: inner radius as a fraction of scale
    double sector_deg = 360.0;  // annulus: arc span starting at `rotation`
    std::string text;           // stencil_polyline: letters to trace
};

struct DatasetSpec {
    std::vector<ShapeSpec> shapes;
    double noise_fraction = 0.0;  // fraction of the final dataset drawn as noise
    BBox noise_bbox;              // empty = bbox of the shape points, padded 5%
    std::uint64_t seed = 0;
};

struct Dataset {
    std::vector<Point2D> points;
    Labeling truth;  // shape index per point, noise = -1
};

/// Deterministic for a fixed spec; per-shape counts are exact and the noise
/// count is round(shape_total * f / (1 - f)), so noise is fraction f of the
/// final dataset. All coordinates are quantized to 9 significant digits so
/// text round-trips are lossless. Throws InvalidSpec.
Dataset generate(const DatasetSpec& spec);

struct Preset {
    std::string name;
    DatasetSpec spec;
    double eps = 0.0;  // local clustering defaults pinned per preset
    int min_pts = 0;
    int kmeans_k = 0;
    double lambda = 0.3;
};

/// Named benchmark analogs t1..t6. Throws InvalidParam for other names.
Preset preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace ddc
