#pragma once

#include <span>
#include <vector>

#include "compact3d/field.hpp"
#include "compact3d/stencil.hpp"

namespace compact3d {

/// Tridiagonal system of one (n, m) sine mode along z. Row r (0-based)
/// couples levels r-1, r, r+1; sub[0] and super[n_z-1] are unused.
struct SpectralSystem {
    int n = 0;  // 1-based x mode
    int m = 0;  // 1-based y mode
    std::vector<Complex> sub;
    std::vector<Complex> diag;
    std::vector<Complex> super;
};

/// Relative pivot threshold below which a system is reported singular.
inline constexpr double singular_pivot_ratio = 1e-14;

SpectralSystem assemble_system(int n, int m, const std::vector<StencilCoefficients>& table,
                               const Grid3D& grid);
SpectralSystem assemble_system(int n, int m, SchemeKind scheme, const CoefficientProfile& profile,
                               const Grid3D& grid);

/// Thomas elimination without pivoting. Throws SingularSystem.
std::vector<Complex> solve_system(const SpectralSystem& system, std::span<const Complex> rhs);

/// Solves spectral z-lines in place without materialising the systems.
class LineSolver {
public:
    LineSolver(const std::vector<StencilCoefficients>& table, const Grid3D& grid);

    int n_z() const noexcept { return static_cast<int>(table_.size()); }

    /// `line` holds the n_z transformed values of mode (n, m), 0-based,
    /// contiguous; `scratch` must have room for n_z values.
    void solve(int n, int m, std::span<Complex> line, std::span<Complex> scratch) const;

private:
    std::vector<StencilCoefficients> table_;
    std::vector<double> cos_x_;
    std::vector<double> cos_y_;
};

/// Half-open range of flattened line indices k = n + n_x * m (0-based).
struct PencilRange {
    int begin = 0;
    int end = 0;
};

/// Solves every (n, m) line in `range` of an x-fastest transformed field;
/// lines outside the range are copied through unchanged.
Field3D solve_all(const Field3D& transformed_rhs, SchemeKind scheme,
                  const CoefficientProfile& profile, const Grid3D& grid, PencilRange range);
Field3D solve_all(const Field3D& transformed_rhs, SchemeKind scheme,
                  const CoefficientProfile& profile, const Grid3D& grid);

}  // namespace compact3d
