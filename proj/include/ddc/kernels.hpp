#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ddc/geom/point.hpp"

// Distance inner loops used by the clustering backends and contour merging.
// A scalar reference implementation always exists; on x86 an AVX2 variant is
// selected at runtime when the CPU supports it. Both variants are required to
// produce bit-identical results (same operation order, no FP contraction), so
// callers may treat the choice as invisible.

namespace ddc::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
Isa detected_isa();
void force_isa(Isa isa);  // throws InvalidParam if the CPU lacks support
std::string_view isa_name(Isa isa);

/// out[i] = squared distance from (xs[i], ys[i]) to q. Sizes must match.
void dist_sq_batch(std::span<const double> xs, std::span<const double> ys,
                   Point2D q, std::span<double> out);

/// Appends to `out` every index i (ascending, offset by `base`) with
/// squared distance from (xs[i], ys[i]) to q at most r_sq.
void collect_within(std::span<const double> xs, std::span<const double> ys,
                    Point2D q, double r_sq, int base, std::vector<int>& out);

/// Index of the centroid nearest to p; ties resolve to the lowest index.
int nearest_centroid(Point2D p, std::span<const double> cxs, std::span<const double> cys);

/// Minimum squared distance over all pairs (a[i], b[j]). Inputs must be
/// non-empty and finite.
double min_pair_dist_sq(std::span<const Point2D> a, std::span<const Point2D> b);

} // namespace ddc::kernels
