#pragma once

#include <vector>

#include "compact3d/assembly.hpp"

namespace compact3d::dense {

// Dense assembly and elimination of the full 27-point system. Intended for
// cross-checking the fast solver on tiny grids (a few hundred unknowns).

/// Square row-major matrix.
struct Matrix {
    int rows = 0;
    std::vector<Complex> values;

    Complex& operator()(int r, int c) { return values[static_cast<std::size_t>(r) * rows + c]; }
    Complex operator()(int r, int c) const { return values[static_cast<std::size_t>(r) * rows + c]; }
};

/// Interior operator A, unknowns in Field3D order.
Matrix assemble(const std::vector<StencilCoefficients>& table, const Grid3D& grid);

/// Contribution of boundary values to each row: B g, assembled row by row
/// over the 27 neighbours that fall on the boundary lattice.
std::vector<Complex> boundary_contribution(const std::vector<StencilCoefficients>& table,
                                           const Grid3D& grid, const BoundaryData& boundary);

std::vector<Complex> multiply(const Matrix& a, const std::vector<Complex>& x);

/// Gaussian elimination with partial pivoting.
std::vector<Complex> solve(Matrix a, std::vector<Complex> rhs);

/// Solves A u = rhs_folded and returns u as a field.
Field3D solve_field(const Field3D& rhs_folded, const std::vector<StencilCoefficients>& table,
                    const Grid3D& grid);

}  // namespace compact3d::dense
