#pragma once

#include <span>
#include <vector>

#include "ddc/geom/point.hpp"

namespace ddc::kernels::detail {

void dist_sq_batch_scalar(std::span<const double> xs, std::span<const double> ys,
                          Point2D q, std::span<double> out);
void collect_within_scalar(std::span<const double> xs, std::span<const double> ys,
                           Point2D q, double r_sq, int base, std::vector<int>& out);
int nearest_centroid_scalar(Point2D p, std::span<const double> cxs, std::span<const double> cys);
double min_pair_dist_sq_scalar(std::span<const Point2D> a, std::span<const Point2D> b);

bool avx2_available();
void dist_sq_batch_avx2(std::span<const double> xs, std::span<const double> ys,
                        Point2D q, std::span<double> out);
void collect_within_avx2(std::span<const double> xs, std::span<const double> ys,
                         Point2D q, double r_sq, int base, std::vector<int>& out);
int nearest_centroid_avx2(Point2D p, std::span<const double> cxs, std::span<const double> cys);
double min_pair_dist_sq_avx2(std::span<const Point2D> a, std::span<const Point2D> b);

} // namespace ddc::kernels::detail
