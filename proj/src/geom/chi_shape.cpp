#include "ddc/geom/chi_shape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ddc/error.hpp"

namespace ddc {
namespace {

uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}

struct EdgeInfo {
    int tri[2] = {-1, -1};
    int opp[2] = {-1, -1};
    int cnt = 0;
};

} // namespace

Polygon characteristic_shape(const Triangulation& tri, double lambda_norm) {
    if (!(lambda_norm >= 0.0 && lambda_norm <= 1.0)) {
        throw InvalidParam("lambda_norm must be in [0,1]");
    }

    std::unordered_map<uint64_t, EdgeInfo> edges;
    edges.reserve(tri.triangles.size() * 2);
    for (int t = 0; t < static_cast<int>(tri.triangles.size()); ++t) {
        const auto& tv = tri.triangles[static_cast<std::size_t>(t)];
        for (int j = 0; j < 3; ++j) {
            EdgeInfo& e = edges[edge_key(tv[static_cast<std::size_t>(j)], tv[static_cast<std::size_t>((j + 1) % 3)])];
            if (e.cnt >= 2) throw Error("edge shared by more than two triangles");
            e.tri[e.cnt] = t;
            e.opp[e.cnt] = tv[static_cast<std::size_t>((j + 2) % 3)];
            ++e.cnt;
        }
    }

    const auto& vs = tri.vertices;
    auto edge_len = [&](uint64_t key) {
        const int u = static_cast<int>(key >> 32);
        const int v = static_cast<int>(key & 0xffffffffu);
        return dist(vs[static_cast<std::size_t>(u)], vs[static_cast<std::size_t>(v)]);
    };

    double l_min = std::numeric_limits<double>::infinity();
    double l_max = 0.0;
    for (const auto& [key, info] : edges) {
        const double len = edge_len(key);
        l_min = std::min(l_min, len);
        l_max = std::max(l_max, len);
    }
    const double l = l_min + lambda_norm * (l_max - l_min);

    std::vector<char> tri_alive(tri.triangles.size(), 1);
    std::vector<char> on_boundary(vs.size(), 0);
    std::unordered_map<uint64_t, char> boundary;  // current boundary edge set

    // Max-heap on (length, u, v): longest first, index order breaking ties.
    using Entry = std::tuple<double, int, int>;
    std::priority_queue<Entry> pq;
    for (const auto& [u, v] : tri.boundary_edges) {
        const uint64_t key = edge_key(u, v);
        boundary.emplace(key, 1);
        on_boundary[static_cast<std::size_t>(u)] = 1;
        pq.emplace(edge_len(key), std::min(u, v), std::max(u, v));
    }

    while (!pq.empty()) {
        const auto [len, u, v] = pq.top();
        pq.pop();
        if (len <= l) break;  // heap order: everything left is short enough
        const uint64_t key = edge_key(u, v);
        const EdgeInfo& info = edges.at(key);
        int inner = -1;
        for (int s = 0; s < info.cnt; ++s) {
            if (tri_alive[static_cast<std::size_t>(info.tri[s])]) {
                if (inner >= 0) throw Error("boundary edge with two live triangles");
                inner = s;
            }
        }
        if (inner < 0) throw Error("boundary edge lost its triangle");
        const int w = info.opp[inner];
        if (on_boundary[static_cast<std::size_t>(w)]) continue;  // permanently unremovable
        tri_alive[static_cast<std::size_t>(info.tri[inner])] = 0;
        boundary.erase(key);
        on_boundary[static_cast<std::size_t>(w)] = 1;
        for (const int a : {u, v}) {
            const uint64_t nk = edge_key(a, w);
            boundary.emplace(nk, 1);
            pq.emplace(edge_len(nk), std::min(a, w), std::max(a, w));
        }
    }

    // The boundary is a simple cycle (each vertex has exactly two incident
    // boundary edges); walk it, then canonicalize orientation and start.
    std::unordered_map<int, std::array<int, 2>> adj;
    for (const auto& [key, flag] : boundary) {
        const int u = static_cast<int>(key >> 32);
        const int v = static_cast<int>(key & 0xffffffffu);
        for (const auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
            auto [it, fresh] = adj.try_emplace(a, std::array<int, 2>{-1, -1});
            if (it->second[0] < 0) {
                it->second[0] = b;
            } else if (it->second[1] < 0) {
                it->second[1] = b;
            } else {
                throw Error("boundary vertex with degree > 2");
            }
        }
    }
    int start = -1;
    for (const auto& [v, nb] : adj) {
        if (nb[1] < 0) throw Error("boundary vertex with degree < 2");
        if (start < 0 || v < start) start = v;
    }
    if (start < 0) throw Error("empty boundary");

    Polygon poly;
    poly.ring.reserve(adj.size());
    int prev = start;
    int cur = std::min(adj.at(start)[0], adj.at(start)[1]);
    poly.ring.push_back(vs[static_cast<std::size_t>(start)]);
    while (cur != start) {
        poly.ring.push_back(vs[static_cast<std::size_t>(cur)]);
        const auto& nb = adj.at(cur);
        const int nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
        if (poly.ring.size() > adj.size()) throw Error("boundary walk did not close");
    }
    if (poly.ring.size() != adj.size()) throw Error("boundary is not a single cycle");
    make_ccw(poly);
    const auto lo = std::min_element(poly.ring.begin(), poly.ring.end());
    std::rotate(poly.ring.begin(), lo, poly.ring.end());
    return poly;
}

Polygon characteristic_shape(std::span<const Point2D> points, double lambda_norm) {
    return characteristic_shape(delaunay(points), lambda_norm);
}

Polygon degenerate_square(Point2D center, double half_side) {
    if (!(half_side > 0.0)) throw InvalidParam("degenerate square needs a positive side");
    return Polygon{{{center.x - half_side, center.y - half_side},
                    {center.x + half_side, center.y - half_side},
                    {center.x + half_side, center.y + half_side},
                    {center.x - half_side, center.y + half_side}}};
}

} // namespace ddc
