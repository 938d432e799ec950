#pragma once

#include <string>

#include "ddc/data/generate.hpp"

namespace ddc {

/// Value after a 9-significant-digit text round-trip.
double quantize9(double v);

/// CSV with header `x,y,label` (or `x,y` when labels are omitted), one point
/// per row, coordinates at 9 significant digits, label -1 = noise.
void write_points(const std::string& path, const Dataset& dataset, bool with_labels = true);

/// Reads the CSV back; the label column is optional (truth left empty without
/// it). Throws IoError on open failure, ParseError with the offending line.
Dataset read_points(const std::string& path);

/// Dataset spec from its JSON form; see read_spec for the file variant.
DatasetSpec spec_from_json(const std::string& text);
DatasetSpec read_spec(const std::string& path);

} // namespace ddc
