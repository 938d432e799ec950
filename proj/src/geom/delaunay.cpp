#include "ddc/geom/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "ddc/error.hpp"
#include "ddc/geom/predicates.hpp"

// Incremental Bowyer-Watson with a ghost vertex closing the outer face.
// Every hull edge (u,v) carries a ghost triangle {v, u, kGhost}, so insertion
// outside the current hull is the same cavity carve as an interior insertion
// and no super-triangle coordinates ever enter the predicates.

namespace ddc {
namespace {

constexpr int kGhost = -1;

struct Tri {
    std::array<int, 3> v;  // CCW for real triangles; ghosts keep kGhost in v[2]
    std::array<int, 3> n;  // n[i] = triangle across the edge opposite v[i]
    bool alive = true;
};

class Mesh {
public:
    explicit Mesh(std::vector<Point2D> pts) : pts_(std::move(pts)) {}

    void build_initial(int a, int b, int c) {
        if (orient2d(pts_[a], pts_[b], pts_[c]) < 0.0) std::swap(b, c);
        const int t = add({a, b, c});
        const int gab = add({b, a, kGhost});
        const int gbc = add({c, b, kGhost});
        const int gca = add({a, c, kGhost});
        tris_[t].n = {gbc, gca, gab};
        // Ghost {v,u,g}: n[0] across (u,g) -> ghost ending at u,
        // n[1] across (g,v) -> ghost starting at v, n[2] -> real mate.
        tris_[gab].n = {gca, gbc, t};
        tris_[gbc].n = {gab, gca, t};
        tris_[gca].n = {gbc, gab, t};
        last_ = t;
    }

    void insert(int p) {
        const int seed = locate(p);
        carve_and_fill(seed, p);
    }

    void extract(Triangulation& out) const {
        for (const Tri& t : tris_) {
            if (t.alive && t.v[2] != kGhost) out.triangles.push_back(t.v);
        }
        // Hull cycle from the ghost ring: ghost {v,u,g} covers hull edge (u,v).
        std::unordered_map<int, int> next;
        int start = -1;
        for (const Tri& t : tris_) {
            if (!t.alive || t.v[2] != kGhost) continue;
            next[t.v[1]] = t.v[0];
            if (start < 0 || t.v[1] < start) start = t.v[1];
        }
        if (start < 0) throw Error("triangulation has no hull");
        int u = start;
        do {
            const auto it = next.find(u);
            if (it == next.end()) throw Error("triangulation hull is not closed");
            out.boundary_edges.emplace_back(u, it->second);
            u = it->second;
        } while (u != start && out.boundary_edges.size() <= next.size());
        if (u != start) throw Error("triangulation hull is not a single cycle");
    }

    std::vector<Point2D>& points() { return pts_; }

private:
    std::vector<Point2D> pts_;
    std::vector<Tri> tris_;
    std::vector<int> mark_;  // cavity membership, keyed by epoch
    int epoch_ = 0;
    int last_ = -1;

    int add(std::array<int, 3> v) {
        tris_.push_back(Tri{v, {-1, -1, -1}, true});
        return static_cast<int>(tris_.size()) - 1;
    }

    static int ccw(int i) { return (i + 1) % 3; }

    bool is_ghost(int t) const { return tris_[t].v[2] == kGhost; }

    bool conflicts(int t, int p) const {
        const Tri& tr = tris_[t];
        const Point2D& q = pts_[p];
        if (tr.v[2] == kGhost) {
            const Point2D& ev = pts_[tr.v[0]];
            const Point2D& eu = pts_[tr.v[1]];
            const double s = orient2d(eu, ev, q);
            if (s < 0.0) return true;  // strictly outside the hull edge
            if (s == 0.0) {            // on the edge's line: only between endpoints
                const double d = (q.x - eu.x) * (q.x - ev.x) + (q.y - eu.y) * (q.y - ev.y);
                return d < 0.0;
            }
            return false;
        }
        return incircle(pts_[tr.v[0]], pts_[tr.v[1]], pts_[tr.v[2]], q) > 0.0;
    }

    // Walk among real triangles toward p; returns a triangle containing p or a
    // conflicting ghost. The containing triangle is a valid cavity seed even
    // when the filtered incircle test is too cautious to report the conflict.
    int locate(int p) {
        int t = last_;
        if (t < 0 || !tris_[t].alive) t = any_alive_real();
        if (is_ghost(t)) t = tris_[t].n[2];
        const Point2D& q = pts_[p];
        const std::size_t cap = 4 * tris_.size() + 64;
        for (std::size_t step = 0; step < cap; ++step) {
            const Tri& tr = tris_[t];
            int cross = -1;
            for (int j = 0; j < 3 && cross < 0; ++j) {
                const Point2D& eu = pts_[tr.v[ccw(j)]];
                const Point2D& ev = pts_[tr.v[ccw(j + 1)]];
                if (orient2d(eu, ev, q) < 0.0) cross = j;
            }
            if (cross < 0) return t;  // inside or on this triangle
            const int nb = tr.n[cross];
            if (!is_ghost(nb)) {
                t = nb;
                continue;
            }
            const int g = find_conflicting_ghost(nb, p);
            if (g >= 0) return g;
            t = tris_[nb].n[2];  // numeric disagreement: resume from the mate
        }
        return locate_exhaustive(p);
    }

    // Walk the ghost ring both ways from `g0` looking for a conflict.
    int find_conflicting_ghost(int g0, int p) const {
        if (conflicts(g0, p)) return g0;
        int fwd = tris_[g0].n[1];
        int bwd = tris_[g0].n[0];
        while (fwd != g0 || bwd != g0) {
            if (fwd != g0) {
                if (conflicts(fwd, p)) return fwd;
                fwd = tris_[fwd].n[1];
            }
            if (bwd != g0) {
                if (conflicts(bwd, p)) return bwd;
                bwd = tris_[bwd].n[0];
            }
            if (fwd == bwd && fwd != g0) {
                if (conflicts(fwd, p)) return fwd;
                break;
            }
        }
        return -1;
    }

    int any_alive_real() const {
        for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i) {
            if (tris_[i].alive && tris_[i].v[2] != kGhost) return i;
        }
        throw Error("triangulation has no live triangle");
    }

    int locate_exhaustive(int p) {
        const Point2D& q = pts_[p];
        for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
            const Tri& tr = tris_[i];
            if (!tr.alive) continue;
            if (tr.v[2] == kGhost) {
                if (conflicts(i, p)) return i;
                continue;
            }
            bool inside = true;
            for (int j = 0; j < 3 && inside; ++j) {
                inside = orient2d(pts_[tr.v[ccw(j)]], pts_[tr.v[ccw(j + 1)]], q) >= 0.0;
            }
            if (inside) return i;
        }
        throw Error("point location failed");
    }

    struct BoundaryEdge {
        int u, v;   // directed edge of the dropped cavity triangle
        int out;    // surviving neighbor across (u,v)
    };

    void carve_and_fill(int seed, int p) {
        ++epoch_;
        if (mark_.size() < tris_.size()) mark_.resize(tris_.size() * 2, 0);
        const auto in_cavity = [&](int t) { return mark_[static_cast<std::size_t>(t)] == epoch_; };
        const auto mark = [&](int t) { mark_[static_cast<std::size_t>(t)] = epoch_; };

        std::vector<int> cavity{seed};
        mark(seed);
        for (std::size_t head = 0; head < cavity.size(); ++head) {
            for (int nb : tris_[cavity[head]].n) {
                if (!in_cavity(nb) && conflicts(nb, p)) {
                    mark(nb);
                    cavity.push_back(nb);
                }
            }
        }

        // The cavity must be star-shaped from p: every surviving real boundary
        // edge (u,v) has to see p strictly on its left, or the fan triangle
        // (u,v,p) would be inverted. Filtered incircle can leave such edges
        // behind near-degeneracy; pull the offending neighbor in and retry.
        std::vector<BoundaryEdge> boundary;
        const Point2D& q = pts_[p];
        for (;;) {
            boundary.clear();
            for (int t : cavity) {
                const Tri& tr = tris_[t];
                for (int j = 0; j < 3; ++j) {
                    if (!in_cavity(tr.n[j])) {
                        boundary.push_back({tr.v[ccw(j)], tr.v[ccw(j + 1)], tr.n[j]});
                    }
                }
            }
            int grow = -1;
            for (const BoundaryEdge& e : boundary) {
                if (e.u == kGhost || e.v == kGhost) continue;
                if (orient2d(pts_[e.u], pts_[e.v], q) <= 0.0) {
                    grow = e.out;
                    break;
                }
            }
            if (grow < 0) break;
            if (cavity.size() >= tris_.size()) throw Error("cavity swallowed the mesh");
            mark(grow);
            cavity.push_back(grow);
        }

        for (int t : cavity) tris_[t].alive = false;

        // Fan: one new triangle (u,v,p) per boundary edge, ghost when the edge
        // touches the ghost vertex. Stitch neighbours by following the loop.
        std::unordered_map<int, std::size_t> by_start;  // boundary edge u -> index
        std::unordered_map<int, std::size_t> by_end;    // boundary edge v -> index
        std::vector<int> fresh;
        fresh.reserve(boundary.size());
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            fresh.push_back(add({boundary[i].u, boundary[i].v, p}));
            by_start.emplace(boundary[i].u, i);
            by_end.emplace(boundary[i].v, i);
        }
        if (by_start.size() != boundary.size() || by_end.size() != boundary.size()) {
            throw Error("cavity boundary is not a cycle");
        }
        int new_real = -1;
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            const BoundaryEdge& e = boundary[i];
            Tri& out = tris_[e.out];
            int slot = -1;
            for (int j = 0; j < 3; ++j) {
                if (out.v[ccw(j)] == e.v && out.v[ccw(j + 1)] == e.u) slot = j;
            }
            if (slot < 0) throw Error("cavity boundary mismatch");
            out.n[slot] = fresh[i];

            std::array<int, 3> v{e.u, e.v, p};
            // n[j] sits across the edge opposite v[j]: (v,p), (p,u), (u,v).
            std::array<int, 3> n{fresh[by_start.at(e.v)], fresh[by_end.at(e.u)], e.out};
            // Keep the ghost vertex in slot 2 (cyclic rotation preserves CCW).
            int rot = 0;
            if (e.u == kGhost) rot = 1;
            if (e.v == kGhost) rot = 2;
            Tri& t = tris_[fresh[i]];
            for (int j = 0; j < 3; ++j) {
                t.v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>((j + rot) % 3)];
                t.n[static_cast<std::size_t>(j)] = n[static_cast<std::size_t>((j + rot) % 3)];
            }
            if (e.u != kGhost && e.v != kGhost) new_real = fresh[i];
        }
        if (new_real >= 0) last_ = new_real;
    }
};

// Hilbert-free spatial ordering: serpentine sweep over a sqrt(n) grid keeps
// consecutive insertions close together, which keeps the walks short.
std::vector<int> insertion_order(const std::vector<Point2D>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    if (n < 16) return order;
    const BBox bb = bounding_box(pts);
    const double w = std::max(bb.width(), 1e-300);
    const double h = std::max(bb.height(), 1e-300);
    const int cells = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n) / 4.0)));
    auto cell_of = [&](int i) {
        int cx = std::min(cells - 1, static_cast<int>((pts[static_cast<std::size_t>(i)].x - bb.min_x) / w * cells));
        int cy = std::min(cells - 1, static_cast<int>((pts[static_cast<std::size_t>(i)].y - bb.min_y) / h * cells));
        if (cy % 2 == 1) cx = cells - 1 - cx;  // serpentine
        return cy * cells + cx;
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cell_of(a) < cell_of(b); });
    return order;
}

} // namespace

Triangulation delaunay(std::span<const Point2D> points) {
    std::vector<Point2D> pts(points.begin(), points.end());
    pts = dedup_points(pts);
    if (pts.size() < 3) throw DegenerateInput("need at least 3 distinct points");

    const std::vector<int> order = insertion_order(pts);
    // First two sites plus the first non-collinear third seed the mesh.
    const int a = order[0];
    const int b = order[1];
    int c = -1;
    std::size_t c_pos = 0;
    for (std::size_t i = 2; i < order.size(); ++i) {
        if (orient2d(pts[a], pts[b], pts[order[i]]) != 0.0) {
            c = order[i];
            c_pos = i;
            break;
        }
    }
    if (c < 0) throw DegenerateInput("all points are collinear");

    Mesh mesh(std::move(pts));
    mesh.build_initial(a, b, c);
    for (std::size_t i = 2; i < order.size(); ++i) {
        if (i == c_pos) continue;
        mesh.insert(order[i]);
    }

    Triangulation out;
    out.vertices = std::move(mesh.points());
    mesh.extract(out);
    return out;
}

} // namespace ddc
