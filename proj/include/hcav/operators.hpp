#pragma once

// Mimetic first-order operators on the staggered grid: grad0 (vertex -> edge),
// curl (edge -> face) and div0 = -grad0^T, together with the h^2-weighted
// inner product. Discrete identities hold exactly:
//   curl . grad0 = 0      entry by entry, in floating point
//   div0 = -grad0^T       at the triplet level
// Boundary DOFs are eliminated, not constrained: operators act on interior
// unknowns only, and excluded entries contribute their known zero.

#include <algorithm>
#include <cstddef>
#include <tuple>
#include <vector>

#include "hcav/common.hpp"
#include "hcav/geometry.hpp"

namespace hcav {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

inline bool operator==(const Triplet& a, const Triplet& b) {
    return a.row == b.row && a.col == b.col && a.value == b.value;
}

/// Deterministic sparse matrix: triplets sorted by (row, col), no duplicates.
struct SparseOperator {
    int nrows = 0;
    int ncols = 0;
    std::vector<Triplet> entries;

    static SparseOperator from_triplets(int nrows, int ncols, std::vector<Triplet> ts) {
        std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
            return std::tie(a.row, a.col) < std::tie(b.row, b.col);
        });
        SparseOperator op;
        op.nrows = nrows;
        op.ncols = ncols;
        op.entries.reserve(ts.size());
        for (const Triplet& t : ts) {
            if (!op.entries.empty() && op.entries.back().row == t.row &&
                op.entries.back().col == t.col)
                op.entries.back().value += t.value;
            else
                op.entries.push_back(t);
        }
        return op;
    }

    SparseOperator transposed() const {
        std::vector<Triplet> ts;
        ts.reserve(entries.size());
        for (const Triplet& t : entries) ts.push_back({t.col, t.row, t.value});
        return from_triplets(ncols, nrows, std::move(ts));
    }

    SparseOperator negated() const {
        SparseOperator op = *this;
        for (Triplet& t : op.entries) t.value = -t.value;
        return op;
    }

    /// y = A x, fixed per-row accumulation order.
    void apply(const double* x, double* y) const {
        std::fill(y, y + nrows, 0.0);
        for (const Triplet& t : entries) y[t.row] += t.value * x[t.col];
    }

    /// y = A^T x, fixed accumulation order.
    void apply_transposed(const double* x, double* y) const {
        std::fill(y, y + ncols, 0.0);
        for (const Triplet& t : entries) y[t.col] += t.value * x[t.row];
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(nrows);
        apply(x.data(), y.data());
        return y;
    }

    std::vector<double> apply_transposed(const std::vector<double>& x) const {
        std::vector<double> y(ncols);
        apply_transposed(x.data(), y.data());
        return y;
    }

    double max_abs() const {
        double m = 0.0;
        for (const Triplet& t : entries) m = std::max(m, std::abs(t.value));
        return m;
    }

    std::vector<std::size_t> row_offsets() const {
        std::vector<std::size_t> off(static_cast<std::size_t>(nrows) + 1, 0);
        for (const Triplet& t : entries) ++off[static_cast<std::size_t>(t.row) + 1];
        for (std::size_t r = 0; r < static_cast<std::size_t>(nrows); ++r) off[r + 1] += off[r];
        return off;
    }
};

inline bool operator==(const SparseOperator& a, const SparseOperator& b) {
    return a.nrows == b.nrows && a.ncols == b.ncols && a.entries == b.entries;
}

/// C = A * B. Per output entry the contributions are accumulated in ascending
/// order of the contraction index, so the result is reproducible. Entries
/// that cancel to exact zero are kept (structural zeros matter for the
/// curl.grad identity check).
inline SparseOperator matmul(const SparseOperator& a, const SparseOperator& b) {
    if (a.ncols != b.nrows) throw ValidationError("matmul: dimension mismatch");
    const auto boff = b.row_offsets();
    std::vector<double> scratch(b.ncols, 0.0);
    std::vector<int> touched;
    std::vector<std::uint8_t> mark(b.ncols, 0);
    SparseOperator c;
    c.nrows = a.nrows;
    c.ncols = b.ncols;
    const auto aoff = a.row_offsets();
    for (int r = 0; r < a.nrows; ++r) {
        touched.clear();
        for (std::size_t ia = aoff[r]; ia < aoff[r + 1]; ++ia) {
            const int k = a.entries[ia].col;
            const double av = a.entries[ia].value;
            for (std::size_t ib = boff[k]; ib < boff[k + 1]; ++ib) {
                const int j = b.entries[ib].col;
                if (!mark[j]) {
                    mark[j] = 1;
                    scratch[j] = 0.0;
                    touched.push_back(j);
                }
                scratch[j] += av * b.entries[ib].value;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int j : touched) {
            c.entries.push_back({r, j, scratch[j]});
            mark[j] = 0;
        }
    }
    return c;
}

inline SparseOperator add(const SparseOperator& a, const SparseOperator& b) {
    if (a.nrows != b.nrows || a.ncols != b.ncols)
        throw ValidationError("add: dimension mismatch");
    std::vector<Triplet> ts = a.entries;
    ts.insert(ts.end(), b.entries.begin(), b.entries.end());
    return SparseOperator::from_triplets(a.nrows, a.ncols, std::move(ts));
}

/// Edge-sampled in-plane vector field on the interior edges of a grid
/// (x-edge block first, then y-edge block). Excluded boundary samples are
/// identically zero and not stored.
struct FieldVector {
    const Grid* grid = nullptr;
    std::vector<double> values;

    FieldVector() = default;
    explicit FieldVector(const Grid& g)
        : grid(&g), values(g.dof_edges.size(), 0.0) {}
    FieldVector(const Grid& g, std::vector<double> v) : grid(&g), values(std::move(v)) {
        if (values.size() != g.dof_edges.size())
            throw ValidationError("field length does not match the grid's interior edge count");
    }

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

namespace detail {
inline void require_same_grid(const FieldVector& u, const FieldVector& v) {
    if (!u.grid || !v.grid || !u.grid->compatible_with(*v.grid))
        throw ValidationError("fields live on different grids");
}
} // namespace detail

/// grad0: interior-vertex potentials to interior edges, (u_head - u_tail)/h
/// with boundary vertices held at zero.
inline SparseOperator build_grad0(const Grid& g) {
    std::vector<Triplet> ts;
    ts.reserve(2 * g.dof_edges.size());
    const double inv_h = 1.0 / g.h;
    for (std::size_t r = 0; r < g.dof_edges.size(); ++r) {
        const auto [tail, head] = g.edge_endpoints(g.dof_edges[r]);
        if (g.vertex_dof[tail] >= 0)
            ts.push_back({static_cast<int>(r), g.vertex_dof[tail], -inv_h});
        if (g.vertex_dof[head] >= 0)
            ts.push_back({static_cast<int>(r), g.vertex_dof[head], +inv_h});
    }
    return SparseOperator::from_triplets(static_cast<int>(g.dof_edges.size()),
                                         static_cast<int>(g.dof_vertices.size()), std::move(ts));
}

/// curl: interior edges to inside faces, counter-clockwise circulation / h.
/// Columns for boundary edges are absent; their samples are the known zero.
inline SparseOperator build_curl(const Grid& g) {
    std::vector<Triplet> ts;
    ts.reserve(4 * g.faces.size());
    const double inv_h = 1.0 / g.h;
    for (std::size_t f = 0; f < g.faces.size(); ++f) {
        const int c = g.faces[f];
        const int ix = c % g.ncx, iy = c / g.ncx;
        const int row = static_cast<int>(f);
        const int bottom = g.xeid(ix, iy), top = g.xeid(ix, iy + 1);
        const int left = g.yeid(ix, iy), right = g.yeid(ix + 1, iy);
        if (g.edge_dof[bottom] >= 0) ts.push_back({row, g.edge_dof[bottom], +inv_h});
        if (g.edge_dof[right] >= 0) ts.push_back({row, g.edge_dof[right], +inv_h});
        if (g.edge_dof[top] >= 0) ts.push_back({row, g.edge_dof[top], -inv_h});
        if (g.edge_dof[left] >= 0) ts.push_back({row, g.edge_dof[left], -inv_h});
    }
    return SparseOperator::from_triplets(static_cast<int>(g.faces.size()),
                                         static_cast<int>(g.dof_edges.size()), std::move(ts));
}

/// div0 = -grad0^T, the negative adjoint under the h^2 inner product.
inline SparseOperator build_div0(const Grid& g) {
    return build_grad0(g).transposed().negated();
}

/// h^2-weighted inner product of two edge fields.
inline double inner(const FieldVector& u, const FieldVector& v) {
    detail::require_same_grid(u, v);
    double s = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) s += u.values[i] * v.values[i];
    return u.grid->h * u.grid->h * s;
}

/// h^2-weighted inner product of two vertex (or face) arrays.
inline double inner_scalar(const Grid& g, const std::vector<double>& u,
                           const std::vector<double>& v) {
    if (u.size() != v.size()) throw ValidationError("inner_scalar: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return g.h * g.h * s;
}

inline double norm(const FieldVector& u) { return std::sqrt(inner(u, u)); }

} // namespace hcav
