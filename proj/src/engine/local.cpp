#include "ddc/engine/local.hpp"

#include <chrono>

#include "ddc/error.hpp"
#include "ddc/geom/chi_shape.hpp"
#include "ddc/geom/predicates.hpp"
#include "ddc/geom/wkt.hpp"

namespace ddc {

Backend backend_from_name(const std::string& name) {
    if (name == "dbscan") return Backend::dbscan;
    if (name == "kmeans") return Backend::kmeans;
    throw InvalidParam("unknown backend: " + name);
}

std::string backend_name(Backend b) {
    return b == Backend::dbscan ? "dbscan" : "kmeans";
}

std::size_t contours_bytes(std::span<const Contour> contours) {
    std::size_t total = 0;
    for (const Contour& c : contours) total += contour_line(c).size() + 1;
    return total;
}

namespace {

bool collinear_set(std::span<const Point2D> distinct) {
    const Point2D& a = distinct[0];
    const Point2D& b = distinct[1];
    for (std::size_t i = 2; i < distinct.size(); ++i)
        if (orient2d(a, b, distinct[i]) != 0.0) return false;
    return true;
}

}  // namespace

LocalModel run_local_phase(const DatasetFragment& fragment, const NodeParams& params,
                           double lambda_norm) {
    if (fragment.points.empty()) throw EmptyFragment("node fragment has no points");

    LocalModel model;
    model.node_id = params.node_id;
    const auto t0 = std::chrono::steady_clock::now();

    Labeling lab;
    std::optional<double> eps_hint;
    if (params.backend == Backend::dbscan) {
        lab = dbscan(fragment.points, params.dbscan);
        eps_hint = params.dbscan.eps;
    } else {
        lab = kmeans(fragment.points, params.kmeans).labeling;
    }

    const BBox frame = bounding_box(fragment.points);
    const double extent = frame.diagonal() > 0.0 ? frame.diagonal() : 1.0;
    const double eps_deg = 1e-6 * extent;

    std::vector<Point2D> members;
    for (int c = 0; c < lab.n_clusters; ++c) {
        members.clear();
        for (std::size_t i = 0; i < fragment.points.size(); ++i)
            if (lab.labels[i] == c) members.push_back(fragment.points[i]);
        if (members.empty()) continue;

        const std::vector<Point2D> distinct = dedup_points(members);
        Polygon poly;
        if (distinct.size() < 3 || collinear_set(distinct)) {
            Point2D mean{0, 0};
            for (const Point2D& p : distinct) {
                mean.x += p.x;
                mean.y += p.y;
            }
            mean.x /= static_cast<double>(distinct.size());
            mean.y /= static_cast<double>(distinct.size());
            poly = degenerate_square(mean, eps_deg);
        } else {
            poly = characteristic_shape(distinct, lambda_norm);
        }
        model.contours.push_back(
            make_contour(std::move(poly), static_cast<std::int64_t>(members.size()),
                         params.node_id, eps_hint));
    }

    model.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    model.bytes_estimate = contours_bytes(model.contours);
    return model;
}

} // namespace ddc
