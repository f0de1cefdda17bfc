#pragma once

#include <functional>
#include <vector>

#include "compact3d/common.hpp"

namespace compact3d {

struct Domain {
    double x_lo = 0.0, x_hi = 1.0;
    double y_lo = 0.0, y_hi = 1.0;
    double z_lo = 0.0, z_hi = 1.0;
};

/// Uniform grid over a box. n_* count interior nodes; node index 0 and
/// n_*+1 lie on the boundary planes.
struct Grid3D {
    Domain domain;
    int n_x = 0, n_y = 0, n_z = 0;
    double h_x = 0.0, h_y = 0.0, h_z = 0.0;

    double x(int i) const { return domain.x_lo + i * h_x; }
    double y(int j) const { return domain.y_lo + j * h_y; }
    double z(int l) const { return domain.z_lo + l * h_z; }

    std::size_t interior_size() const {
        return static_cast<std::size_t>(n_x) * n_y * n_z;
    }
    std::size_t plane_size() const { return static_cast<std::size_t>(n_x) * n_y; }

    /// True when h_x, h_y and h_z agree to a relative 1e-12.
    bool is_uniform() const;
};

/// Throws std::invalid_argument on non-positive counts or a degenerate box.
Grid3D make_grid(const Domain& domain, int n_x, int n_y, int n_z);

/// k^2(z) and its first two z-derivatives sampled on levels 0..n_z+1,
/// plus the z-convection coefficient (zero for Helmholtz problems).
struct CoefficientProfile {
    std::vector<Complex> k2;
    std::vector<Complex> k2_z;
    std::vector<Complex> k2_zz;
    Complex gamma{0.0, 0.0};
};

using ProfileFunction = std::function<Complex(double z)>;

CoefficientProfile sample_profile(const ProfileFunction& k2,
                                  const ProfileFunction& k2_z,
                                  const ProfileFunction& k2_zz,
                                  Complex gamma,
                                  const Grid3D& grid);

/// Profile with k^2 identically zero and the given convection coefficient.
CoefficientProfile zero_profile(const Grid3D& grid, Complex gamma = {});

}  // namespace compact3d
