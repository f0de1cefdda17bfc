#include "compact3d/stencil.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace compact3d {

std::string_view to_string(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::SecondOrder: return "2";
        case SchemeKind::FourthOrder: return "4";
        case SchemeKind::SixthOrder: return "6";
        case SchemeKind::ConvectionDiffusion4: return "cd4";
    }
    return "?";
}

SchemeKind parse_scheme(std::string_view text) {
    if (text == "2") return SchemeKind::SecondOrder;
    if (text == "4") return SchemeKind::FourthOrder;
    if (text == "6") return SchemeKind::SixthOrder;
    if (text == "cd4") return SchemeKind::ConvectionDiffusion4;
    throw std::invalid_argument("unknown scheme '" + std::string(text) + "' (expected 2, 4, 6 or cd4)");
}

namespace {

void check_level(const CoefficientProfile& profile, const Grid3D& grid, int l) {
    if (l < 1 || l > grid.n_z) {
        throw std::out_of_range("stencil level " + std::to_string(l) + " outside 1.." +
                                std::to_string(grid.n_z));
    }
    if (profile.k2.size() < static_cast<std::size_t>(grid.n_z + 2)) {
        throw std::invalid_argument("coefficient profile shorter than n_z + 2 levels");
    }
}

struct Ratios {
    double zx;
    double zy;
};

Ratios ratios(const Grid3D& g) {
    return {(g.h_z * g.h_z) / (g.h_x * g.h_x), (g.h_z * g.h_z) / (g.h_y * g.h_y)};
}

}  // namespace

StencilCoefficients coefficients_second(const CoefficientProfile& profile, const Grid3D& grid,
                                        int l) {
    check_level(profile, grid, l);
    const auto [r_zx, r_zy] = ratios(grid);
    const double hz2 = grid.h_z * grid.h_z;

    StencilCoefficients s;
    s.layer[StencilCoefficients::Below].d = 1.0;
    s.layer[StencilCoefficients::Above].d = 1.0;
    auto& mid = s.layer[StencilCoefficients::Centre];
    mid.b = r_zx;
    mid.c = r_zy;
    mid.d = -2.0 * (r_zx + r_zy + 1.0) + hz2 * profile.k2[l];
    return s;
}

StencilCoefficients coefficients_fourth(const CoefficientProfile& profile, const Grid3D& grid,
                                        int l) {
    check_level(profile, grid, l);
    const auto [r_zx, r_zy] = ratios(grid);
    const double hz2 = grid.h_z * grid.h_z;
    const Complex k2_lo = profile.k2[l - 1];
    const Complex k2_mid = profile.k2[l];
    const Complex k2_hi = profile.k2[l + 1];

    StencilCoefficients s;
    auto& lo = s.layer[StencilCoefficients::Below];
    auto& mid = s.layer[StencilCoefficients::Centre];
    auto& hi = s.layer[StencilCoefficients::Above];

    lo.b = hi.b = (1.0 + r_zx) / 12.0;
    lo.c = hi.c = (1.0 + r_zy) / 12.0;
    lo.d = 2.0 / 3.0 - (r_zx + r_zy) / 6.0 + hz2 * k2_lo / 12.0;
    hi.d = 2.0 / 3.0 - (r_zx + r_zy) / 6.0 + hz2 * k2_hi / 12.0;

    mid.a = (r_zx + r_zy) / 12.0;
    mid.b = (4.0 * r_zx - r_zy - 1.0 + hz2 * k2_mid / 2.0) / 6.0;
    mid.c = (4.0 * r_zy - r_zx - 1.0 + hz2 * k2_mid / 2.0) / 6.0;
    mid.d = -4.0 * (1.0 + r_zx + r_zy) / 3.0 + hz2 * k2_mid / 2.0;
    return s;
}

StencilCoefficients coefficients_sixth(const CoefficientProfile& profile, const Grid3D& grid,
                                       int l) {
    check_level(profile, grid, l);
    if (!grid.is_uniform()) {
        throw UnsupportedScheme("sixth-order scheme requires h_x = h_y = h_z");
    }
    const double h = grid.h_z;
    const double h2 = h * h;
    const double h3 = h2 * h;
    const double h4 = h2 * h2;
    const Complex k2_lo = profile.k2[l - 1];
    const Complex k2_mid = profile.k2[l];
    const Complex k2_hi = profile.k2[l + 1];
    const Complex k2z = profile.k2_z[l];
    const Complex k2zz = profile.k2_zz[l];

    StencilCoefficients s;
    auto& lo = s.layer[StencilCoefficients::Below];
    auto& mid = s.layer[StencilCoefficients::Centre];
    auto& hi = s.layer[StencilCoefficients::Above];

    lo.a = hi.a = 1.0 / 30.0;
    lo.b = lo.c = 1.0 / 10.0 + h2 * k2_lo / 90.0 - h3 * k2z / 120.0;
    hi.b = hi.c = 1.0 / 10.0 + h2 * k2_hi / 90.0 + h3 * k2z / 120.0;
    lo.d = 7.0 / 15.0 - h2 * k2_lo / 90.0 - (h3 * k2z / 20.0) * (1.0 / 3.0 + h2 * k2_lo / 6.0);
    hi.d = 7.0 / 15.0 - h2 * k2_hi / 90.0 + (h3 * k2z / 20.0) * (1.0 / 3.0 + h2 * k2_hi / 6.0);

    mid.a = 1.0 / 10.0 + h2 * k2_mid / 90.0;
    mid.b = mid.c = 7.0 / 15.0 - h2 * k2_mid / 90.0;
    mid.d = -64.0 / 15.0 + 14.0 * h2 * k2_mid / 15.0 - h4 * (k2_mid * k2_mid) / 20.0 +
            h4 * k2zz / 20.0;
    return s;
}

StencilCoefficients coefficients_convdiff(const CoefficientProfile& profile, const Grid3D& grid,
                                          int l) {
    check_level(profile, grid, l);
    const auto [r_zx, r_zy] = ratios(grid);
    const Complex g = profile.gamma * grid.h_z;

    StencilCoefficients s;
    auto& lo = s.layer[StencilCoefficients::Below];
    auto& mid = s.layer[StencilCoefficients::Centre];
    auto& hi = s.layer[StencilCoefficients::Above];

    lo.b = (1.0 + r_zx) * (2.0 - g) / 24.0;
    hi.b = (1.0 + r_zx) * (2.0 + g) / 24.0;
    lo.c = (1.0 + r_zy) * (2.0 - g) / 24.0;
    hi.c = (1.0 + r_zy) * (2.0 + g) / 24.0;
    const double base = 2.0 / 3.0 - (r_zx + r_zy) / 6.0;
    lo.d = base - (g / 12.0) * (4.0 - r_zx - r_zy - g);
    hi.d = base + (g / 12.0) * (4.0 - r_zx - r_zy + g);

    mid.a = (r_zx + r_zy) / 12.0;
    mid.b = (4.0 * r_zx - r_zy - 1.0) / 6.0;
    mid.c = (4.0 * r_zy - r_zx - 1.0) / 6.0;
    mid.d = -4.0 * (1.0 + r_zx + r_zy) / 3.0 - g * g / 6.0;
    return s;
}

StencilCoefficients coefficients(SchemeKind scheme, const CoefficientProfile& profile,
                                 const Grid3D& grid, int l) {
    switch (scheme) {
        case SchemeKind::SecondOrder: return coefficients_second(profile, grid, l);
        case SchemeKind::FourthOrder: return coefficients_fourth(profile, grid, l);
        case SchemeKind::SixthOrder: return coefficients_sixth(profile, grid, l);
        case SchemeKind::ConvectionDiffusion4: return coefficients_convdiff(profile, grid, l);
    }
    throw std::invalid_argument("unknown scheme");
}

std::vector<StencilCoefficients> coefficient_table(SchemeKind scheme,
                                                   const CoefficientProfile& profile,
                                                   const Grid3D& grid) {
    std::vector<StencilCoefficients> table;
    table.reserve(grid.n_z);
    for (int l = 1; l <= grid.n_z; ++l) {
        table.push_back(coefficients(scheme, profile, grid, l));
    }
    return table;
}

Complex eigenvalue(const StencilCoefficients& coeffs, StencilCoefficients::Layer layer, int n,
                   int m, const Grid3D& grid) {
    if (n < 1 || n > grid.n_x || m < 1 || m > grid.n_y) {
        throw std::out_of_range("eigenvalue mode (" + std::to_string(n) + "," +
                                std::to_string(m) + ") outside the grid");
    }
    const double cx = std::cos(n * std::numbers::pi / (grid.n_x + 1));
    const double cy = std::cos(m * std::numbers::pi / (grid.n_y + 1));
    return layer_eigenvalue(coeffs.layer[layer], cx, cy);
}

std::vector<double> mode_cosines(int count) {
    std::vector<double> c(count);
    for (int n = 1; n <= count; ++n) {
        c[n - 1] = std::cos(n * std::numbers::pi / (count + 1));
    }
    return c;
}

}  // namespace compact3d
