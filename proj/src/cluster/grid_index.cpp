#include "ddc/cluster/grid_index.hpp"

#include <algorithm>
#include <cmath>

#include "ddc/error.hpp"
#include "ddc/kernels.hpp"

namespace ddc {
namespace {

std::int32_t cell_coord(double v, double cell_size) {
    return static_cast<std::int32_t>(std::floor(v / cell_size));
}

} // namespace

GridIndex build_grid_index(std::span<const Point2D> points, double cell_size) {
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
        throw InvalidParam("cell_size must be positive and finite");
    }
    GridIndex g;
    g.cell_size = cell_size;

    std::vector<std::uint64_t> keys(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        keys[i] = GridIndex::key(cell_coord(points[i].x, cell_size),
                                 cell_coord(points[i].y, cell_size));
        auto [it, fresh] = g.cell_of.try_emplace(keys[i], static_cast<int>(g.cell_of.size()));
        (void)it;
    }

    const std::size_t n_cells = g.cell_of.size();
    std::vector<int> counts(n_cells, 0);
    for (const auto k : keys) ++counts[static_cast<std::size_t>(g.cell_of.at(k))];
    g.cell_start.assign(n_cells + 1, 0);
    for (std::size_t c = 0; c < n_cells; ++c) {
        g.cell_start[c + 1] = g.cell_start[c] + counts[c];
    }
    g.ids.resize(points.size());
    g.xs.resize(points.size());
    g.ys.resize(points.size());
    std::vector<int> cursor(g.cell_start.begin(), g.cell_start.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) {  // ascending ids per cell
        const int c = g.cell_of.at(keys[i]);
        const int slot = cursor[static_cast<std::size_t>(c)]++;
        g.ids[static_cast<std::size_t>(slot)] = static_cast<int>(i);
        g.xs[static_cast<std::size_t>(slot)] = points[i].x;
        g.ys[static_cast<std::size_t>(slot)] = points[i].y;
    }
    return g;
}

std::vector<int> region_query(const GridIndex& index, std::span<const Point2D> points,
                              int center_id, double eps) {
    if (center_id < 0 || static_cast<std::size_t>(center_id) >= points.size()) {
        throw InvalidParam("center_id out of range");
    }
    const Point2D q = points[static_cast<std::size_t>(center_id)];
    const double r_sq = eps * eps;
    const std::int32_t cx = cell_coord(q.x, index.cell_size);
    const std::int32_t cy = cell_coord(q.y, index.cell_size);

    std::vector<int> slots;  // hits as positions into the reordered arrays
    for (std::int32_t dx = -1; dx <= 1; ++dx) {
        for (std::int32_t dy = -1; dy <= 1; ++dy) {
            const auto it = index.cell_of.find(GridIndex::key(cx + dx, cy + dy));
            if (it == index.cell_of.end()) continue;
            const int c = it->second;
            const int b = index.cell_start[static_cast<std::size_t>(c)];
            const int e = index.cell_start[static_cast<std::size_t>(c) + 1];
            kernels::collect_within(
                std::span(index.xs).subspan(static_cast<std::size_t>(b), static_cast<std::size_t>(e - b)),
                std::span(index.ys).subspan(static_cast<std::size_t>(b), static_cast<std::size_t>(e - b)),
                q, r_sq, b, slots);
        }
    }
    std::vector<int> out;
    out.reserve(slots.size());
    for (const int s : slots) out.push_back(index.ids[static_cast<std::size_t>(s)]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ddc
