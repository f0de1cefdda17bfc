#include "compact3d/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace compact3d {

namespace {

[[noreturn]] void throw_singular(int n, int m, int row) {
    throw SingularSystem(n, m,
                         "singular spectral system at mode (" + std::to_string(n) + "," +
                             std::to_string(m) + "), row " + std::to_string(row + 1));
}

inline double row_scale(Complex sub, Complex diag, Complex super) {
    return std::max({std::abs(sub), std::abs(diag), std::abs(super)});
}

// Bound on any eigenvalue of the row, so cancellation to zero still counts as singular.
double stencil_scale(const StencilCoefficients& s) {
    double total = 0;
    for (const LayerWeights& w : s.layer)
        total += 4 * std::abs(w.a) + 2 * std::abs(w.b) + 2 * std::abs(w.c) + std::abs(w.d);
    return total;
}

void check_mode(int n, int m, const Grid3D& grid) {
    if (n < 1 || n > grid.n_x || m < 1 || m > grid.n_y) {
        throw std::out_of_range("spectral mode (" + std::to_string(n) + "," + std::to_string(m) +
                                ") outside the grid");
    }
}

}  // namespace

SpectralSystem assemble_system(int n, int m, const std::vector<StencilCoefficients>& table,
                               const Grid3D& grid) {
    check_mode(n, m, grid);
    if (table.size() != static_cast<std::size_t>(grid.n_z)) {
        throw std::invalid_argument("coefficient table must have one entry per level");
    }
    const double cx = mode_cosines(grid.n_x)[n - 1];
    const double cy = mode_cosines(grid.n_y)[m - 1];
    SpectralSystem sys;
    sys.n = n;
    sys.m = m;
    const int nz = grid.n_z;
    sys.sub.resize(nz);
    sys.diag.resize(nz);
    sys.super.resize(nz);
    for (int r = 0; r < nz; ++r) {
        const auto& s = table[r];
        sys.sub[r] = r > 0 ? layer_eigenvalue(s.below(), cx, cy) : Complex{};
        sys.diag[r] = layer_eigenvalue(s.centre(), cx, cy);
        sys.super[r] = r + 1 < nz ? layer_eigenvalue(s.above(), cx, cy) : Complex{};
    }
    return sys;
}

SpectralSystem assemble_system(int n, int m, SchemeKind scheme, const CoefficientProfile& profile,
                               const Grid3D& grid) {
    return assemble_system(n, m, coefficient_table(scheme, profile, grid), grid);
}

std::vector<Complex> solve_system(const SpectralSystem& system, std::span<const Complex> rhs) {
    const std::size_t nz = system.diag.size();
    if (rhs.size() != nz || system.sub.size() != nz || system.super.size() != nz) {
        throw std::invalid_argument("solve_system: rhs length does not match the system");
    }
    std::vector<Complex> x(rhs.begin(), rhs.end());
    if (nz == 0) return x;
    std::vector<Complex> c_prime(nz);

    // Forward sweep
    for (std::size_t r = 0; r < nz; ++r) {
        const Complex sub = r > 0 ? system.sub[r] : Complex{};
        const Complex sup = r + 1 < nz ? system.super[r] : Complex{};
        const Complex pivot = r > 0 ? system.diag[r] - sub * c_prime[r - 1] : system.diag[r];
        if (std::abs(pivot) <= singular_pivot_ratio * row_scale(sub, system.diag[r], sup)) {
            throw_singular(system.n, system.m, static_cast<int>(r));
        }
        const Complex inv = 1.0 / pivot;
        c_prime[r] = sup * inv;
        x[r] = (r > 0 ? x[r] - sub * x[r - 1] : x[r]) * inv;
    }
    // Back substitution
    for (std::size_t r = nz - 1; r > 0; --r) x[r - 1] -= c_prime[r - 1] * x[r];
    return x;
}

LineSolver::LineSolver(const std::vector<StencilCoefficients>& table, const Grid3D& grid)
    : table_(table), cos_x_(mode_cosines(grid.n_x)), cos_y_(mode_cosines(grid.n_y)) {
    if (table_.size() != static_cast<std::size_t>(grid.n_z)) {
        throw std::invalid_argument("coefficient table must have one entry per level");
    }
}

void LineSolver::solve(int n, int m, std::span<Complex> line, std::span<Complex> scratch) const {
    const int nz = n_z();
    const double cx = cos_x_[n];
    const double cy = cos_y_[m];
    Complex* c_prime = scratch.data();

    // Forward sweep, generating the system entries on the fly.
    Complex prev_c{};
    Complex prev_x{};
    for (int r = 0; r < nz; ++r) {
        const StencilCoefficients& s = table_[r];
        const Complex sub = r > 0 ? layer_eigenvalue(s.below(), cx, cy) : Complex{};
        const Complex diag = layer_eigenvalue(s.centre(), cx, cy);
        const Complex sup = r + 1 < nz ? layer_eigenvalue(s.above(), cx, cy) : Complex{};
        const Complex pivot = diag - sub * prev_c;
        if (std::abs(pivot) <= singular_pivot_ratio * stencil_scale(s)) {
            throw_singular(n + 1, m + 1, r);
        }
        const Complex inv = 1.0 / pivot;
        prev_c = sup * inv;
        prev_x = (line[r] - sub * prev_x) * inv;
        c_prime[r] = prev_c;
        line[r] = prev_x;
    }
    // Back substitution
    for (int r = nz - 1; r > 0; --r) line[r - 1] -= c_prime[r - 1] * line[r];
}

Field3D solve_all(const Field3D& transformed_rhs, SchemeKind scheme,
                  const CoefficientProfile& profile, const Grid3D& grid, PencilRange range) {
    if (transformed_rhs.n_x() != grid.n_x || transformed_rhs.n_y() != grid.n_y ||
        transformed_rhs.n_z() != grid.n_z) {
        throw std::invalid_argument("solve_all: field extents do not match the grid");
    }
    const int lines = grid.n_x * grid.n_y;
    if (range.begin < 0 || range.end > lines || range.begin > range.end) {
        throw std::out_of_range("solve_all: pencil range outside 0.." + std::to_string(lines));
    }
    const LineSolver solver(coefficient_table(scheme, profile, grid), grid);
    Field3D out = transformed_rhs;
    std::vector<Complex> line(grid.n_z);
    std::vector<Complex> scratch(grid.n_z);
    for (int k = range.begin; k < range.end; ++k) {
        const int n = k % grid.n_x;
        const int m = k / grid.n_x;
        for (int l = 0; l < grid.n_z; ++l) line[l] = out(n, m, l);
        solver.solve(n, m, line, scratch);
        for (int l = 0; l < grid.n_z; ++l) out(n, m, l) = line[l];
    }
    return out;
}

Field3D solve_all(const Field3D& transformed_rhs, SchemeKind scheme,
                  const CoefficientProfile& profile, const Grid3D& grid) {
    return solve_all(transformed_rhs, scheme, profile, grid, {0, grid.n_x * grid.n_y});
}

}  // namespace compact3d
