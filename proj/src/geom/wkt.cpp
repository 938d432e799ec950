#include "ddc/geom/wkt.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "ddc/error.hpp"

namespace ddc {
namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void skip_ws(std::string_view s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
}

void expect(std::string_view s, std::size_t& i, std::string_view token, std::size_t line_no) {
    skip_ws(s, i);
    if (s.substr(i, token.size()) != token) {
        throw ParseError("expected '" + std::string(token) + "' in WKT", line_no);
    }
    i += token.size();
}

double parse_double(std::string_view s, std::size_t& i, std::size_t line_no) {
    skip_ws(s, i);
    const std::string tail(s.substr(i));
    char* end = nullptr;
    const double v = std::strtod(tail.c_str(), &end);
    if (end == tail.c_str()) throw ParseError("expected a number in WKT", line_no);
    if (!std::isfinite(v)) throw ParseError("non-finite coordinate", line_no);
    i += static_cast<std::size_t>(end - tail.c_str());
    return v;
}

} // namespace

std::string to_wkt(const Polygon& poly) {
    std::string out = "POLYGON ((";
    for (const Point2D& p : poly.ring) {
        out += fmt9(p.x);
        out += ' ';
        out += fmt9(p.y);
        out += ", ";
    }
    out += fmt9(poly.ring.front().x);
    out += ' ';
    out += fmt9(poly.ring.front().y);
    out += "))";
    return out;
}

Polygon polygon_from_wkt(std::string_view text, std::size_t line_no) {
    std::size_t i = 0;
    expect(text, i, "POLYGON", line_no);
    expect(text, i, "(", line_no);
    expect(text, i, "(", line_no);
    Polygon poly;
    for (;;) {
        const double x = parse_double(text, i, line_no);
        const double y = parse_double(text, i, line_no);
        poly.ring.push_back({x, y});
        skip_ws(text, i);
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        break;
    }
    expect(text, i, ")", line_no);
    expect(text, i, ")", line_no);
    skip_ws(text, i);
    if (i != text.size()) throw ParseError("trailing characters after WKT", line_no);
    if (poly.ring.size() < 4) throw ParseError("polygon ring too short", line_no);
    if (!(poly.ring.front() == poly.ring.back())) {
        throw ParseError("polygon ring is not closed", line_no);
    }
    poly.ring.pop_back();
    return poly;
}

std::string contour_line(const Contour& c) {
    return std::to_string(c.point_count) + ";" + fmt9(c.density) + ";" + to_wkt(c.polygon);
}

Contour contour_from_line(std::string_view text, std::size_t line_no) {
    const std::size_t s1 = text.find(';');
    if (s1 == std::string_view::npos) throw ParseError("missing point_count separator", line_no);
    const std::size_t s2 = text.find(';', s1 + 1);
    if (s2 == std::string_view::npos) throw ParseError("missing density separator", line_no);

    const std::string count_str(text.substr(0, s1));
    char* end = nullptr;
    const long long count = std::strtoll(count_str.c_str(), &end, 10);
    if (end != count_str.c_str() + count_str.size() || count < 0) {
        throw ParseError("bad point_count", line_no);
    }
    std::size_t di = 0;
    const std::string_view dpart = text.substr(s1 + 1, s2 - s1 - 1);
    const double stored_density = parse_double(dpart, di, line_no);

    Polygon poly = polygon_from_wkt(text.substr(s2 + 1), line_no);
    const double area = polygon_area(poly);
    if (!(area > 0.0)) throw ParseError("polygon has no area", line_no);
    Contour c;
    c.polygon = std::move(poly);
    c.point_count = count;
    c.density = static_cast<double>(count) / area;
    // The stored density is redundant (9 significant digits of count/area);
    // treat a larger deviation as corruption.
    const double ref = std::max(std::abs(c.density), 1e-300);
    if (std::abs(stored_density - c.density) > 1e-6 * ref) {
        throw ParseError("density does not match point_count/area", line_no);
    }
    return c;
}

void write_contours(std::ostream& os, std::span<const Contour> contours) {
    for (const Contour& c : contours) os << contour_line(c) << '\n';
}

std::vector<Contour> read_contours(std::istream& is) {
    std::vector<Contour> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::string_view sv(line);
        if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
        std::size_t i = 0;
        skip_ws(sv, i);
        if (i == sv.size()) continue;
        out.push_back(contour_from_line(sv, line_no));
    }
    return out;
}

} // namespace ddc
