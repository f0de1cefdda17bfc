#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "compact3d/common.hpp"
#include "compact3d/grid.hpp"

namespace compact3d {

enum class SchemeKind { SecondOrder, FourthOrder, SixthOrder, ConvectionDiffusion4 };

std::string_view to_string(SchemeKind scheme);
/// Accepts the CLI spellings "2", "4", "6" and "cd4".
SchemeKind parse_scheme(std::string_view text);

/// Weights of one horizontal 3x3 layer of the 27-point stencil.
///   a: the four corners (i+-1, j+-1)
///   b: the two x-neighbours (i+-1, j)
///   c: the two y-neighbours (i, j+-1)
///   d: the centre (i, j)
struct LayerWeights {
    Complex a{}, b{}, c{}, d{};

    /// Sum over all nine positions of the layer.
    Complex sum() const { return 4.0 * a + 2.0 * b + 2.0 * c + d; }
};

/// The twelve stencil values of one row, for layers l-1, l, l+1.
struct StencilCoefficients {
    enum Layer { Below = 0, Centre = 1, Above = 2 };
    std::array<LayerWeights, 3> layer{};

    const LayerWeights& below() const { return layer[Below]; }
    const LayerWeights& centre() const { return layer[Centre]; }
    const LayerWeights& above() const { return layer[Above]; }

    /// Weighted sum of all 27 stencil positions.
    Complex row_sum() const { return layer[0].sum() + layer[1].sum() + layer[2].sum(); }
};

// Row builders. `l` is the 1-based interior level (1..n_z); out-of-range
// levels throw std::out_of_range.
StencilCoefficients coefficients_second(const CoefficientProfile& profile, const Grid3D& grid, int l);
StencilCoefficients coefficients_fourth(const CoefficientProfile& profile, const Grid3D& grid, int l);
/// Requires h_x = h_y = h_z, otherwise throws UnsupportedScheme.
StencilCoefficients coefficients_sixth(const CoefficientProfile& profile, const Grid3D& grid, int l);
StencilCoefficients coefficients_convdiff(const CoefficientProfile& profile, const Grid3D& grid, int l);

StencilCoefficients coefficients(SchemeKind scheme, const CoefficientProfile& profile,
                                 const Grid3D& grid, int l);

/// Row coefficients for every level; entry l-1 belongs to level l.
std::vector<StencilCoefficients> coefficient_table(SchemeKind scheme,
                                                   const CoefficientProfile& profile,
                                                   const Grid3D& grid);

/// Eigenvalue of one layer's plane operator for the sine mode with
/// cosines cos_x = cos(n pi/(n_x+1)) and cos_y = cos(m pi/(n_y+1)).
inline Complex layer_eigenvalue(const LayerWeights& w, double cos_x, double cos_y) {
    return 4.0 * w.a * (cos_x * cos_y) + 2.0 * w.b * cos_x + 2.0 * w.c * cos_y + w.d;
}

/// Eigenvalue for 1-based modes n in 1..n_x and m in 1..n_y.
Complex eigenvalue(const StencilCoefficients& coeffs, StencilCoefficients::Layer layer,
                   int n, int m, const Grid3D& grid);

/// cos(n pi / (count+1)) for n = 1..count, stored at index n-1.
std::vector<double> mode_cosines(int count);

}  // namespace compact3d
