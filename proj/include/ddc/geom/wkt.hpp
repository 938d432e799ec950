#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ddc/geom/contour.hpp"

namespace ddc {

/// `POLYGON ((x1 y1, x2 y2, ..., x1 y1))`, 9 significant digits.
std::string to_wkt(const Polygon& poly);

/// Parses the format produced by to_wkt. Throws ParseError.
Polygon polygon_from_wkt(std::string_view text, std::size_t line_no = 0);

/// One contour per line: `point_count;density;POLYGON ((...))`.
std::string contour_line(const Contour& c);
Contour contour_from_line(std::string_view text, std::size_t line_no = 0);

void write_contours(std::ostream& os, std::span<const Contour> contours);
std::vector<Contour> read_contours(std::istream& is);

} // namespace ddc
