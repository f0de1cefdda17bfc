#include "compact3d/dense.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace compact3d::dense {

namespace {

Complex weight(const StencilCoefficients& s, int di, int dj, int dl) {
    const LayerWeights& w = s.layer[dl + 1];
    if (di != 0 && dj != 0) return w.a;
    if (di != 0) return w.b;
    if (dj != 0) return w.c;
    return w.d;
}

void check_table(const std::vector<StencilCoefficients>& table, const Grid3D& grid) {
    if (static_cast<int>(table.size()) != grid.n_z) {
        throw std::invalid_argument("dense: coefficient table size does not match n_z");
    }
}

// Visits the 27 neighbours of each interior node. `fn(row, ni, nj, nl, w)`
// receives 0-based neighbour indices that may lie on the boundary (-1 or n).
template <class Fn>
void for_each_entry(const std::vector<StencilCoefficients>& table, const Grid3D& grid, Fn fn) {
    const int nx = grid.n_x, ny = grid.n_y, nz = grid.n_z;
    int row = 0;
    for (int l = 0; l < nz; ++l) {
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i, ++row) {
                for (int dl = -1; dl <= 1; ++dl)
                    for (int dj = -1; dj <= 1; ++dj)
                        for (int di = -1; di <= 1; ++di)
                            fn(row, i + di, j + dj, l + dl, weight(table[l], di, dj, dl));
            }
        }
    }
}

}  // namespace

Matrix assemble(const std::vector<StencilCoefficients>& table, const Grid3D& grid) {
    check_table(table, grid);
    const int n = grid.n_x * grid.n_y * grid.n_z;
    Matrix a;
    a.rows = n;
    a.values.assign(static_cast<std::size_t>(n) * n, Complex{});
    for_each_entry(table, grid, [&](int row, int i, int j, int l, Complex w) {
        if (i < 0 || j < 0 || l < 0 || i >= grid.n_x || j >= grid.n_y || l >= grid.n_z) return;
        a(row, i + grid.n_x * (j + grid.n_y * l)) += w;
    });
    return a;
}

std::vector<Complex> boundary_contribution(const std::vector<StencilCoefficients>& table,
                                           const Grid3D& grid, const BoundaryData& boundary) {
    check_table(table, grid);
    std::vector<Complex> out(static_cast<std::size_t>(grid.n_x) * grid.n_y * grid.n_z);
    if (boundary.is_zero()) return out;
    for_each_entry(table, grid, [&](int row, int i, int j, int l, Complex w) {
        if (i >= 0 && j >= 0 && l >= 0 && i < grid.n_x && j < grid.n_y && l < grid.n_z) return;
        out[row] += w * boundary.value(i + 1, j + 1, l + 1);
    });
    return out;
}

std::vector<Complex> multiply(const Matrix& a, const std::vector<Complex>& x) {
    if (static_cast<int>(x.size()) != a.rows) {
        throw std::invalid_argument("dense::multiply: size mismatch");
    }
    std::vector<Complex> y(x.size());
    for (int r = 0; r < a.rows; ++r) {
        Complex acc{};
        for (int c = 0; c < a.rows; ++c) acc += a(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

std::vector<Complex> solve(Matrix a, std::vector<Complex> rhs) {
    const int n = a.rows;
    if (static_cast<int>(rhs.size()) != n) {
        throw std::invalid_argument("dense::solve: size mismatch");
    }
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int r = k + 1; r < n; ++r) {
            if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
        }
        if (a(piv, k) == Complex{}) throw std::runtime_error("dense::solve: singular matrix");
        if (piv != k) {
            for (int c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            std::swap(rhs[k], rhs[piv]);
        }
        for (int r = k + 1; r < n; ++r) {
            const Complex f = a(r, k) / a(k, k);
            if (f == Complex{}) continue;
            for (int c = k; c < n; ++c) a(r, c) -= f * a(k, c);
            rhs[r] -= f * rhs[k];
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        Complex acc = rhs[k];
        for (int c = k + 1; c < n; ++c) acc -= a(k, c) * rhs[c];
        rhs[k] = acc / a(k, k);
    }
    return rhs;
}

Field3D solve_field(const Field3D& rhs_folded, const std::vector<StencilCoefficients>& table,
                    const Grid3D& grid) {
    if (rhs_folded.n_x() != grid.n_x || rhs_folded.n_y() != grid.n_y ||
        rhs_folded.n_z() != grid.n_z) {
        throw std::invalid_argument("dense::solve_field: extents do not match the grid");
    }
    auto v = rhs_folded.values();
    auto u = solve(assemble(table, grid), std::vector<Complex>(v.begin(), v.end()));
    Field3D out(grid.n_x, grid.n_y, grid.n_z);
    std::copy(u.begin(), u.end(), out.values().begin());
    return out;
}

}  // namespace compact3d::dense
