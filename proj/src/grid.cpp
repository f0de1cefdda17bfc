#include "compact3d/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace compact3d {

namespace {

bool close_rel(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

bool Grid3D::is_uniform() const { return close_rel(h_x, h_y) && close_rel(h_x, h_z); }

Grid3D make_grid(const Domain& domain, int n_x, int n_y, int n_z) {
    if (n_x < 1 || n_y < 1 || n_z < 1) {
        throw std::invalid_argument("make_grid: interior counts must be positive (got " +
                                    std::to_string(n_x) + "," + std::to_string(n_y) + "," +
                                    std::to_string(n_z) + ")");
    }
    if (!(domain.x_lo < domain.x_hi) || !(domain.y_lo < domain.y_hi) ||
        !(domain.z_lo < domain.z_hi)) {
        throw std::invalid_argument("make_grid: degenerate or unordered domain bounds");
    }
    Grid3D g;
    g.domain = domain;
    g.n_x = n_x;
    g.n_y = n_y;
    g.n_z = n_z;
    g.h_x = (domain.x_hi - domain.x_lo) / (n_x + 1);
    g.h_y = (domain.y_hi - domain.y_lo) / (n_y + 1);
    g.h_z = (domain.z_hi - domain.z_lo) / (n_z + 1);
    return g;
}

CoefficientProfile sample_profile(const ProfileFunction& k2, const ProfileFunction& k2_z,
                                  const ProfileFunction& k2_zz, Complex gamma,
                                  const Grid3D& grid) {
    CoefficientProfile p;
    const int levels = grid.n_z + 2;
    p.k2.reserve(levels);
    p.k2_z.reserve(levels);
    p.k2_zz.reserve(levels);
    for (int l = 0; l < levels; ++l) {
        const double z = grid.z(l);
        p.k2.push_back(k2 ? k2(z) : Complex{});
        p.k2_z.push_back(k2_z ? k2_z(z) : Complex{});
        p.k2_zz.push_back(k2_zz ? k2_zz(z) : Complex{});
    }
    p.gamma = gamma;
    return p;
}

CoefficientProfile zero_profile(const Grid3D& grid, Complex gamma) {
    return sample_profile(nullptr, nullptr, nullptr, gamma, grid);
}

}  // namespace compact3d
