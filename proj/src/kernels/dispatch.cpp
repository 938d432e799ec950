#include "ddc/kernels.hpp"

#include "ddc/error.hpp"
#include "internal.hpp"

namespace ddc::kernels {

namespace {

Isa g_isa = detail::avx2_available() ? Isa::avx2 : Isa::scalar;

} // namespace

Isa active_isa() { return g_isa; }

Isa detected_isa() { return detail::avx2_available() ? Isa::avx2 : Isa::scalar; }

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && !detail::avx2_available()) {
        throw InvalidParam("avx2 kernels not supported on this CPU");
    }
    g_isa = isa;
}

std::string_view isa_name(Isa isa) {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

void dist_sq_batch(std::span<const double> xs, std::span<const double> ys,
                   Point2D q, std::span<double> out) {
    if (xs.size() != ys.size() || xs.size() != out.size()) {
        throw LengthMismatch("dist_sq_batch spans disagree");
    }
    if (g_isa == Isa::avx2) {
        detail::dist_sq_batch_avx2(xs, ys, q, out);
    } else {
        detail::dist_sq_batch_scalar(xs, ys, q, out);
    }
}

void collect_within(std::span<const double> xs, std::span<const double> ys,
                    Point2D q, double r_sq, int base, std::vector<int>& out) {
    if (xs.size() != ys.size()) throw LengthMismatch("collect_within spans disagree");
    if (g_isa == Isa::avx2) {
        detail::collect_within_avx2(xs, ys, q, r_sq, base, out);
    } else {
        detail::collect_within_scalar(xs, ys, q, r_sq, base, out);
    }
}

int nearest_centroid(Point2D p, std::span<const double> cxs, std::span<const double> cys) {
    if (cxs.size() != cys.size()) throw LengthMismatch("nearest_centroid spans disagree");
    if (g_isa == Isa::avx2) return detail::nearest_centroid_avx2(p, cxs, cys);
    return detail::nearest_centroid_scalar(p, cxs, cys);
}

double min_pair_dist_sq(std::span<const Point2D> a, std::span<const Point2D> b) {
    if (a.empty() || b.empty()) throw InvalidParam("min_pair_dist_sq needs non-empty inputs");
    if (g_isa == Isa::avx2) return detail::min_pair_dist_sq_avx2(a, b);
    return detail::min_pair_dist_sq_scalar(a, b);
}

} // namespace ddc::kernels
