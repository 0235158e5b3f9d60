#pragma once

// Rectilinear 2D cavity domains with rectangular holes, discretized on a
// staggered (cell-complex) grid.
//
// Entity layout on an ncx x ncy cell grid:
//   vertices  (ncx+1) x (ncy+1), index iy*(ncx+1)+ix            (row-major)
//   x-edges   ncx x (ncy+1), between v(ix,iy) and v(ix+1,iy)    (point +x)
//   y-edges   (ncx+1) x ncy, between v(ix,iy) and v(ix,iy+1)    (point +y)
//   faces     ncx x ncy, one per cell                           (CCW)
// Global edge ids put all x-edges first, then all y-edges, each block
// row-major. All tables below are derived deterministically from the spec,
// so equal domain specs produce bit-identical grids.
//
// Perfect-conductor boundary conditions are encoded combinatorially:
//   - an edge lying along a boundary curve (outer box or hole outline)
//     carries tangential field and is removed from the unknowns,
//   - a vertex touching any boundary carries a grounded potential and is
//     removed likewise.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "hcav/common.hpp"

namespace hcav {

struct HoleRect {
    double x0 = 0.0;
    double y0 = 0.0;
    double w = 0.0;
    double h = 0.0;
};

struct DomainSpec {
    double width = 1.0;
    double height = 1.0;
    double spacing = 0.125; // grid spacing, same unit as width/height
    std::vector<HoleRect> holes;
};

namespace detail {

// Snap a length that must be an integer multiple of h; returns -1 if it is
// not one within 1e-9 relative tolerance.
inline long snap_to_grid(double value, double h) {
    const double q = value / h;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) return -1;
    return static_cast<long>(r);
}

} // namespace detail

/// Axis-aligned hole in cell coordinates.
struct HoleCells {
    int cx0, cy0, cx1, cy1; // half-open cell range [cx0,cx1) x [cy0,cy1)
};

struct Grid {
    DomainSpec spec;
    int ncx = 0, ncy = 0;
    double h = 0.0;
    std::vector<HoleCells> hole_cells;

    // membership of the inside cell complex
    std::vector<std::uint8_t> cell_inside;       // ncx*ncy
    std::vector<std::uint8_t> vertex_in_complex; // (ncx+1)*(ncy+1)
    std::vector<std::uint8_t> edge_in_complex;   // n_edges_total()

    // counts of the inside complex (used for the Euler characteristic)
    int nV = 0, nE = 0, nF = 0;
    int boundary_components = 0;

    // degrees of freedom
    std::vector<int> dof_vertices; // global vertex ids, ascending
    std::vector<int> dof_edges;    // global edge ids, ascending (x block, then y block)
    std::vector<int> vertex_dof;   // global -> dof index, -1 if constrained
    std::vector<int> edge_dof;     // global -> dof index, -1 if constrained
    std::vector<int> faces;        // inside-face index -> global cell id
    std::vector<int> face_index;   // global cell id -> inside-face index, -1 outside

    // -- index helpers ------------------------------------------------------
    int n_vertices_total() const { return (ncx + 1) * (ncy + 1); }
    int n_xedges_total() const { return ncx * (ncy + 1); }
    int n_yedges_total() const { return (ncx + 1) * ncy; }
    int n_edges_total() const { return n_xedges_total() + n_yedges_total(); }
    int n_cells_total() const { return ncx * ncy; }

    int vid(int ix, int iy) const { return iy * (ncx + 1) + ix; }
    int xeid(int ix, int iy) const { return iy * ncx + ix; }
    int yeid(int ix, int iy) const { return n_xedges_total() + iy * (ncx + 1) + ix; }
    int cid(int ix, int iy) const { return iy * ncx + ix; }

    bool is_x_edge(int e) const { return e < n_xedges_total(); }

    /// (tail, head) vertex ids of a global edge; orientation +x resp. +y.
    std::pair<int, int> edge_endpoints(int e) const {
        if (is_x_edge(e)) {
            const int ix = e % ncx, iy = e / ncx;
            return {vid(ix, iy), vid(ix + 1, iy)};
        }
        const int k = e - n_xedges_total();
        const int ix = k % (ncx + 1), iy = k / (ncx + 1);
        return {vid(ix, iy), vid(ix, iy + 1)};
    }

    Vec2 edge_midpoint(int e) const {
        if (is_x_edge(e)) {
            const int ix = e % ncx, iy = e / ncx;
            return {(ix + 0.5) * h, iy * h};
        }
        const int k = e - n_xedges_total();
        const int ix = k % (ncx + 1), iy = k / (ncx + 1);
        return {ix * h, (iy + 0.5) * h};
    }

    bool cell_is_inside(int ix, int iy) const {
        if (ix < 0 || iy < 0 || ix >= ncx || iy >= ncy) return false;
        return cell_inside[cid(ix, iy)] != 0;
    }

    int euler_characteristic() const { return nV - nE + nF; }

    /// Structural equality of the discretization (same cells, same spacing).
    bool compatible_with(const Grid& other) const {
        return ncx == other.ncx && ncy == other.ncy && h == other.h &&
               cell_inside == other.cell_inside;
    }
};

namespace detail {

inline void validate_spec(const DomainSpec& spec, int& ncx, int& ncy,
                          std::vector<HoleCells>& holes) {
    if (!(spec.width > 0.0) || !(spec.height > 0.0) || !(spec.spacing > 0.0))
        throw ValidationError("domain width, height and spacing must be positive");
    const long nx = snap_to_grid(spec.width, spec.spacing);
    const long ny = snap_to_grid(spec.height, spec.spacing);
    if (nx <= 0 || ny <= 0)
        throw ValidationError("width and height must be integer multiples of the grid spacing");
    ncx = static_cast<int>(nx);
    ncy = static_cast<int>(ny);

    holes.clear();
    for (std::size_t i = 0; i < spec.holes.size(); ++i) {
        const HoleRect& r = spec.holes[i];
        const long cx0 = snap_to_grid(r.x0, spec.spacing);
        const long cy0 = snap_to_grid(r.y0, spec.spacing);
        const long cw = snap_to_grid(r.w, spec.spacing);
        const long ch = snap_to_grid(r.h, spec.spacing);
        if (cx0 < 0 || cy0 < 0 || cw < 0 || ch < 0)
            throw ValidationError("hole " + std::to_string(i) + " is not grid-aligned");
        if (cw == 0 || ch == 0)
            throw ValidationError("hole " + std::to_string(i) + " has zero extent");
        const HoleCells hc{static_cast<int>(cx0), static_cast<int>(cy0),
                           static_cast<int>(cx0 + cw), static_cast<int>(cy0 + ch)};
        // strictly inside the bounding box: one full cell of wall on every side
        if (hc.cx0 < 1 || hc.cy0 < 1 || hc.cx1 > ncx - 1 || hc.cy1 > ncy - 1)
            throw ValidationError("hole " + std::to_string(i) +
                                  " touches or crosses the outer boundary");
        holes.push_back(hc);
    }
    // pairwise disjoint with at least one cell of separation
    for (std::size_t i = 0; i < holes.size(); ++i)
        for (std::size_t j = i + 1; j < holes.size(); ++j) {
            const HoleCells& a = holes[i];
            const HoleCells& b = holes[j];
            const bool apart = a.cx1 + 1 <= b.cx0 || b.cx1 + 1 <= a.cx0 ||
                               a.cy1 + 1 <= b.cy0 || b.cy1 + 1 <= a.cy0;
            if (!apart)
                throw ValidationError("holes " + std::to_string(i) + " and " + std::to_string(j) +
                                      " overlap or touch (need one cell of separation)");
        }
}

// Count the connected components of the boundary-edge graph. Boundary curves
// of a valid spec are disjoint cycles, so this equals 1 + number of holes.
inline int count_boundary_components(const Grid& g) {
    const int nv = g.n_vertices_total();
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    std::vector<std::uint8_t> touched(nv, 0);
    for (int e = 0; e < g.n_edges_total(); ++e) {
        if (!g.edge_in_complex[e] || g.edge_dof[e] >= 0) continue; // boundary edges only
        auto [a, b] = g.edge_endpoints(e);
        touched[a] = touched[b] = 1;
        parent[find(a)] = find(b);
    }
    int count = 0;
    for (int v = 0; v < nv; ++v)
        if (touched[v] && find(v) == v) ++count;
    return count;
}

} // namespace detail

/// Build the staggered-grid cell complex and classify all degrees of freedom.
/// Rejects specs whose holes are not grid-aligned, touch the outer boundary,
/// or come closer to each other than one cell.
inline Grid build_grid(const DomainSpec& spec) {
    Grid g;
    g.spec = spec;
    detail::validate_spec(spec, g.ncx, g.ncy, g.hole_cells);
    g.h = spec.width / g.ncx;

    g.cell_inside.assign(g.n_cells_total(), 1);
    for (const HoleCells& hc : g.hole_cells)
        for (int iy = hc.cy0; iy < hc.cy1; ++iy)
            for (int ix = hc.cx0; ix < hc.cx1; ++ix)
                g.cell_inside[g.cid(ix, iy)] = 0;

    // faces of the inside complex
    g.face_index.assign(g.n_cells_total(), -1);
    for (int iy = 0; iy < g.ncy; ++iy)
        for (int ix = 0; ix < g.ncx; ++ix)
            if (g.cell_inside[g.cid(ix, iy)]) {
                g.face_index[g.cid(ix, iy)] = static_cast<int>(g.faces.size());
                g.faces.push_back(g.cid(ix, iy));
            }
    g.nF = static_cast<int>(g.faces.size());

    // vertices: in the complex if any incident cell is inside, a DOF only if
    // all four incident cells are inside (touching no boundary)
    g.vertex_in_complex.assign(g.n_vertices_total(), 0);
    g.vertex_dof.assign(g.n_vertices_total(), -1);
    for (int iy = 0; iy <= g.ncy; ++iy)
        for (int ix = 0; ix <= g.ncx; ++ix) {
            int inside = 0, total = 0;
            for (int dy = -1; dy <= 0; ++dy)
                for (int dx = -1; dx <= 0; ++dx) {
                    ++total;
                    if (g.cell_is_inside(ix + dx, iy + dy)) ++inside;
                }
            const int v = g.vid(ix, iy);
            if (inside > 0) g.vertex_in_complex[v] = 1;
            if (inside == total) { // all four incident cells inside: off every boundary
                g.vertex_dof[v] = static_cast<int>(g.dof_vertices.size());
                g.dof_vertices.push_back(v);
            }
        }
    g.nV = static_cast<int>(std::count(g.vertex_in_complex.begin(), g.vertex_in_complex.end(), 1));

    // edges: each edge separates two (possibly virtual outside) cells; it is
    // in the complex if either is inside, a boundary edge if exactly one is
    g.edge_in_complex.assign(g.n_edges_total(), 0);
    g.edge_dof.assign(g.n_edges_total(), -1);
    auto classify_edge = [&](int e, bool c0, bool c1) {
        if (!(c0 || c1)) return;
        g.edge_in_complex[e] = 1;
        if (c0 && c1) {
            g.edge_dof[e] = static_cast<int>(g.dof_edges.size());
            g.dof_edges.push_back(e);
        }
    };
    for (int iy = 0; iy <= g.ncy; ++iy)
        for (int ix = 0; ix < g.ncx; ++ix)
            classify_edge(g.xeid(ix, iy), g.cell_is_inside(ix, iy - 1), g.cell_is_inside(ix, iy));
    for (int iy = 0; iy < g.ncy; ++iy)
        for (int ix = 0; ix <= g.ncx; ++ix)
            classify_edge(g.yeid(ix, iy), g.cell_is_inside(ix - 1, iy), g.cell_is_inside(ix, iy));
    g.nE = static_cast<int>(std::count(g.edge_in_complex.begin(), g.edge_in_complex.end(), 1));

    g.boundary_components = detail::count_boundary_components(g);
    return g;
}

/// Shortest distance from a point to the domain boundary (outer walls and
/// hole outlines). Negative values mean the point is outside the domain.
inline double distance_to_boundary(const Grid& g, Vec2 p) {
    const double W = g.ncx * g.h, H = g.ncy * g.h;
    double d = std::min(std::min(p.x, W - p.x), std::min(p.y, H - p.y));
    for (const HoleCells& hc : g.hole_cells) {
        const double x0 = hc.cx0 * g.h, x1 = hc.cx1 * g.h;
        const double y0 = hc.cy0 * g.h, y1 = hc.cy1 * g.h;
        if (p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1) {
            // inside the hole: negative clearance
            const double inward =
                std::min(std::min(p.x - x0, x1 - p.x), std::min(p.y - y0, y1 - p.y));
            d = std::min(d, -inward);
        } else {
            const double dx = std::max({x0 - p.x, 0.0, p.x - x1});
            const double dy = std::max({y0 - p.y, 0.0, p.y - y1});
            d = std::min(d, std::sqrt(dx * dx + dy * dy));
        }
    }
    return d;
}

struct EdgePair {
    int x_edge = -1; // global edge id
    int y_edge = -1;
    int x_dof = -1; // position inside the x block of a field vector
    int y_dof = -1;
};

/// Nearest interior x-edge and y-edge to a point. The point must be strictly
/// inside and farther than 2h from every boundary; ties between equidistant
/// edges go to the lower global index.
inline EdgePair locate(const Grid& g, Vec2 p) {
    const double clearance = distance_to_boundary(g, p);
    if (clearance <= 2.0 * g.h * (1.0 - 1e-12))
        throw ValidationError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                              ") is outside the domain or closer than 2h to a boundary");
    EdgePair best;
    double bx = -1.0, by = -1.0;
    for (int e : g.dof_edges) {
        const Vec2 m = g.edge_midpoint(e);
        const double dx = m.x - p.x, dy = m.y - p.y;
        const double d2 = dx * dx + dy * dy;
        if (g.is_x_edge(e)) {
            if (bx < 0.0 || d2 < bx) {
                bx = d2;
                best.x_edge = e;
                best.x_dof = g.edge_dof[e];
            }
        } else if (by < 0.0 || d2 < by) {
            by = d2;
            best.y_edge = e;
            best.y_dof = g.edge_dof[e];
        }
    }
    if (best.x_edge < 0 || best.y_edge < 0)
        throw ValidationError("domain has no interior edges to place a point on");
    return best;
}

} // namespace hcav
