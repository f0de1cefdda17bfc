#pragma once

#include <functional>
#include <optional>

#include "compact3d/field.hpp"
#include "compact3d/grid.hpp"
#include "compact3d/stencil.hpp"

namespace compact3d {

using ScalarField = std::function<Complex(double x, double y, double z)>;

/// Dirichlet data on the closed boundary lattice, addressed by node
/// indices (0..n+1 in each direction; at least one index on a boundary
/// plane). An empty evaluator means homogeneous data.
struct BoundaryData {
    std::function<Complex(int i, int j, int l)> value;

    bool is_zero() const { return !value; }

    static BoundaryData zero() { return {}; }
    /// Samples `u` at node coordinates of `grid`.
    static BoundaryData from_function(const Grid3D& grid, ScalarField u);
};

/// Source derivatives at one point, as consumed by the sixth-order and
/// convection-diffusion right-hand sides.
struct SourceJet {
    Complex f{};
    Complex f_z{};
    Complex f_xx{}, f_yy{}, f_zz{};
    Complex laplacian{};
    Complex bilaplacian{};
    Complex f_xxyy{}, f_xxzz{}, f_yyzz{};
};

/// Right-hand side f of the PDE. An empty `f` means f = 0. `jet` supplies
/// analytic derivatives and is required by the sixth-order and
/// convection-diffusion schemes when f is nonzero.
struct SourceSpec {
    ScalarField f;
    std::function<SourceJet(double x, double y, double z)> jet;

    bool is_zero() const { return !f; }
    static SourceSpec zero() { return {}; }
};

/// Scheme right-hand side F (already scaled by h_z^2) on interior nodes.
/// Throws std::invalid_argument when required derivatives are missing.
Field3D build_rhs(SchemeKind scheme, const SourceSpec& source, const CoefficientProfile& profile,
                  const Grid3D& grid);

/// Fills 0-based planes [l_begin, l_end) of `rhs`. `rhs` spans exactly those planes.
void build_rhs_planes(SchemeKind scheme, const SourceSpec& source,
                      const CoefficientProfile& profile, const Grid3D& grid, int l_begin,
                      int l_end, std::span<Complex> rhs);

/// Moves the boundary contributions of every row to the right-hand side.
Field3D fold_dirichlet(Field3D rhs, const BoundaryData& boundary, SchemeKind scheme,
                       const CoefficientProfile& profile, const Grid3D& grid);

/// Plane-range form of fold_dirichlet over `coeffs` (one entry per level).
void fold_dirichlet_planes(const BoundaryData& boundary,
                           const std::vector<StencilCoefficients>& coeffs, const Grid3D& grid,
                           int l_begin, int l_end, std::span<Complex> rhs);

/// A u, with neighbours on the boundary lattice taken from `boundary`.
Field3D apply_stencil(const Field3D& u, const BoundaryData& boundary, SchemeKind scheme,
                      const CoefficientProfile& profile, const Grid3D& grid);

Field3D apply_stencil(const Field3D& u, const BoundaryData& boundary,
                      const std::vector<StencilCoefficients>& coeffs, const Grid3D& grid);

/// ||A u - rhs_folded||_2 with zero boundary (the boundary is already in
/// rhs_folded). Throws std::invalid_argument on extent mismatch.
double residual_l2(const Field3D& u, const Field3D& rhs_folded, SchemeKind scheme,
                   const CoefficientProfile& profile, const Grid3D& grid);

}  // namespace compact3d
