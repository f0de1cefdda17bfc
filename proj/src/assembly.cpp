#include "compact3d/assembly.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace compact3d {

BoundaryData BoundaryData::from_function(const Grid3D& grid, ScalarField u) {
    return {[grid, u = std::move(u)](int i, int j, int l) {
        return u(grid.x(i), grid.y(j), grid.z(l));
    }};
}

double max_abs_difference(const Field3D& a, const Field3D& b) {
    if (!a.same_extents(b)) {
        throw std::invalid_argument("max_abs_difference: extent mismatch");
    }
    double worst = 0.0;
    auto va = a.values();
    auto vb = b.values();
    for (std::size_t k = 0; k < va.size(); ++k) {
        worst = std::max(worst, std::abs(va[k] - vb[k]));
    }
    return worst;
}

namespace {

/// Keeps the last three node levels of a closed-grid quantity as padded
/// (n_x+2) x (n_y+2) layers. Levels must be requested in ascending order
/// for the cache to help; any order is correct.
template <class Filler>
class LayerCache {
public:
    LayerCache(const Grid3D& grid, Filler filler)
        : stride_(grid.n_x + 2), size_(static_cast<std::size_t>(grid.n_x + 2) * (grid.n_y + 2)),
          filler_(std::move(filler)) {
        for (auto& s : slots_) s.assign(size_, Complex{});
    }

    const Complex* level(int node_level) {
        const int slot = node_level % 3;
        if (tags_[slot] != node_level) {
            filler_(node_level, slots_[slot].data());
            tags_[slot] = node_level;
        }
        return slots_[slot].data();
    }

    int stride() const { return stride_; }

private:
    int stride_;
    std::size_t size_;
    Filler filler_;
    std::array<std::vector<Complex>, 3> slots_;
    std::array<int, 3> tags_{-1, -1, -1};
};

/// Fills a padded layer at node level L with interior values from `u`
/// (or zero) and the boundary ring from `boundary` (or zero).
struct StateFiller {
    const Grid3D* grid;
    const Field3D* u;
    const BoundaryData* boundary;

    void operator()(int L, Complex* out) const {
        const int nx = grid->n_x, ny = grid->n_y, nz = grid->n_z;
        const int stride = nx + 2;
        const bool boundary_level = (L == 0 || L == nz + 1);
        const bool have_bc = !boundary->is_zero();
        for (int j = 0; j <= ny + 1; ++j) {
            const bool edge_row = (j == 0 || j == ny + 1);
            Complex* row = out + static_cast<std::size_t>(j) * stride;
            if (boundary_level || edge_row) {
                for (int i = 0; i <= nx + 1; ++i) {
                    row[i] = have_bc ? boundary->value(i, j, L) : Complex{};
                }
                continue;
            }
            row[0] = have_bc ? boundary->value(0, j, L) : Complex{};
            row[nx + 1] = have_bc ? boundary->value(nx + 1, j, L) : Complex{};
            if (u != nullptr) {
                const Complex* src = &(*u)(0, j - 1, L - 1);
                for (int i = 1; i <= nx; ++i) row[i] = src[i - 1];
            } else {
                for (int i = 1; i <= nx; ++i) row[i] = Complex{};
            }
        }
    }
};

/// One row of the 27-point operator at padded position (i, j).
inline Complex row_value(const StencilCoefficients& s, const std::array<const Complex*, 3>& layers,
                         int stride, int i, int j) {
    Complex acc{};
    for (int t = 0; t < 3; ++t) {
        const LayerWeights& w = s.layer[t];
        const Complex* p = layers[t] + static_cast<std::size_t>(j) * stride + i;
        const Complex corners = p[-stride - 1] + p[-stride + 1] + p[stride - 1] + p[stride + 1];
        const Complex xs = p[-1] + p[1];
        const Complex ys = p[-stride] + p[stride];
        acc += w.a * corners + w.b * xs + w.c * ys + w.d * p[0];
    }
    return acc;
}

void check_planes(const Grid3D& grid, int l_begin, int l_end, std::span<Complex> out) {
    if (l_begin < 0 || l_end > grid.n_z || l_begin > l_end) {
        throw std::out_of_range("plane range outside the grid");
    }
    if (out.size() != grid.plane_size() * static_cast<std::size_t>(l_end - l_begin)) {
        throw std::invalid_argument("plane buffer size does not match the plane range");
    }
}

void apply_planes(const Field3D* u, const BoundaryData& boundary,
                  const std::vector<StencilCoefficients>& coeffs, const Grid3D& grid,
                  int l_begin, int l_end, std::span<Complex> out) {
    check_planes(grid, l_begin, l_end, out);
    LayerCache cache(grid, StateFiller{&grid, u, &boundary});
    const int nx = grid.n_x, ny = grid.n_y;
    std::size_t k = 0;
    for (int l = l_begin; l < l_end; ++l) {
        const int L = l + 1;
        const std::array<const Complex*, 3> layers{cache.level(L - 1), cache.level(L),
                                                   cache.level(L + 1)};
        const StencilCoefficients& s = coeffs[l];
        for (int j = 1; j <= ny; ++j) {
            for (int i = 1; i <= nx; ++i) {
                out[k++] = row_value(s, layers, cache.stride(), i, j);
            }
        }
    }
}

void check_coeffs(const std::vector<StencilCoefficients>& coeffs, const Grid3D& grid) {
    if (coeffs.size() != static_cast<std::size_t>(grid.n_z)) {
        throw std::invalid_argument("coefficient table must have one entry per level");
    }
}

void check_field(const Field3D& u, const Grid3D& grid) {
    if (u.n_x() != grid.n_x || u.n_y() != grid.n_y || u.n_z() != grid.n_z) {
        throw std::invalid_argument("field extents do not match the grid");
    }
}

}  // namespace

void build_rhs_planes(SchemeKind scheme, const SourceSpec& source,
                      const CoefficientProfile& profile, const Grid3D& grid, int l_begin,
                      int l_end, std::span<Complex> rhs) {
    check_planes(grid, l_begin, l_end, rhs);
    if (source.is_zero()) {
        std::fill(rhs.begin(), rhs.end(), Complex{});
        return;
    }
    const bool needs_jet =
        scheme == SchemeKind::SixthOrder || scheme == SchemeKind::ConvectionDiffusion4;
    if (needs_jet && !source.jet) {
        throw std::invalid_argument(std::string("scheme ") + std::string(to_string(scheme)) +
                                    " needs analytic source derivatives");
    }
    if (scheme == SchemeKind::SixthOrder && !grid.is_uniform()) {
        throw UnsupportedScheme("sixth-order scheme requires h_x = h_y = h_z");
    }

    const int nx = grid.n_x, ny = grid.n_y;
    const double hx2 = grid.h_x * grid.h_x;
    const double hy2 = grid.h_y * grid.h_y;
    const double hz2 = grid.h_z * grid.h_z;
    std::size_t k = 0;

    switch (scheme) {
        case SchemeKind::SecondOrder:
            for (int l = l_begin; l < l_end; ++l) {
                const double z = grid.z(l + 1);
                for (int j = 1; j <= ny; ++j) {
                    const double y = grid.y(j);
                    for (int i = 1; i <= nx; ++i) rhs[k++] = hz2 * source.f(grid.x(i), y, z);
                }
            }
            return;

        case SchemeKind::FourthOrder: {
            // (1 + h_x^2/12 dxx + h_y^2/12 dyy + h_z^2/12 dzz) f on the closed grid.
            auto fill = [&grid, &source](int L, Complex* out) {
                const int stride = grid.n_x + 2;
                const double z = grid.z(L);
                for (int j = 0; j <= grid.n_y + 1; ++j) {
                    const double y = grid.y(j);
                    for (int i = 0; i <= grid.n_x + 1; ++i) {
                        out[static_cast<std::size_t>(j) * stride + i] = source.f(grid.x(i), y, z);
                    }
                }
            };
            LayerCache cache(grid, fill);
            const int stride = cache.stride();
            for (int l = l_begin; l < l_end; ++l) {
                const int L = l + 1;
                const Complex* lo = cache.level(L - 1);
                const Complex* mid = cache.level(L);
                const Complex* hi = cache.level(L + 1);
                for (int j = 1; j <= ny; ++j) {
                    for (int i = 1; i <= nx; ++i) {
                        const std::size_t p = static_cast<std::size_t>(j) * stride + i;
                        const Complex f0 = mid[p];
                        const Complex dxx = mid[p - 1] - 2.0 * f0 + mid[p + 1];
                        const Complex dyy = mid[p - stride] - 2.0 * f0 + mid[p + stride];
                        const Complex dzz = lo[p] - 2.0 * f0 + hi[p];
                        rhs[k++] = hz2 * (f0 + (dxx + dyy + dzz) / 12.0);
                    }
                }
            }
            return;
        }

        case SchemeKind::SixthOrder: {
            const double h2 = hz2;
            const double h4 = h2 * h2;
            const double h6 = h4 * h2;
            for (int l = l_begin; l < l_end; ++l) {
                const int L = l + 1;
                const double z = grid.z(L);
                // The k^2 f and k^2_z f_z pieces of the Delta_h(k^2 U) correction
                // involve only the source, so they live on this side.
                const Complex coupling = h6 * profile.k2_z[L] / 60.0;
                const Complex k2f = h4 * profile.k2[L] / 20.0;
                for (int j = 1; j <= ny; ++j) {
                    const double y = grid.y(j);
                    for (int i = 1; i <= nx; ++i) {
                        const SourceJet s = source.jet(grid.x(i), y, z);
                        const Complex mixed = s.f_xxyy + s.f_xxzz + s.f_yyzz;
                        // f_xxxx + f_yyyy + f_zzzz
                        const Complex pure = s.bilaplacian - 2.0 * mixed;
                        rhs[k++] = h2 * (s.f + h2 / 12.0 * s.laplacian + h4 / 360.0 * pure +
                                         h4 / 90.0 * mixed) -
                                   k2f * s.f + coupling * s.f_z;
                    }
                }
            }
            return;
        }

        case SchemeKind::ConvectionDiffusion4: {
            const Complex gamma = profile.gamma;
            for (int l = l_begin; l < l_end; ++l) {
                const double z = grid.z(l + 1);
                for (int j = 1; j <= ny; ++j) {
                    const double y = grid.y(j);
                    for (int i = 1; i <= nx; ++i) {
                        const SourceJet s = source.jet(grid.x(i), y, z);
                        rhs[k++] = hz2 * (s.f + hx2 / 12.0 * s.f_xx + hy2 / 12.0 * s.f_yy +
                                          hz2 / 12.0 * (gamma * s.f_z + s.f_zz));
                    }
                }
            }
            return;
        }
    }
}

Field3D build_rhs(SchemeKind scheme, const SourceSpec& source, const CoefficientProfile& profile,
                  const Grid3D& grid) {
    Field3D rhs(grid.n_x, grid.n_y, grid.n_z);
    build_rhs_planes(scheme, source, profile, grid, 0, grid.n_z, rhs.values());
    return rhs;
}

void fold_dirichlet_planes(const BoundaryData& boundary,
                           const std::vector<StencilCoefficients>& coeffs, const Grid3D& grid,
                           int l_begin, int l_end, std::span<Complex> rhs) {
    check_planes(grid, l_begin, l_end, rhs);
    check_coeffs(coeffs, grid);
    if (boundary.is_zero()) return;

    LayerCache cache(grid, StateFiller{&grid, nullptr, &boundary});
    const int nx = grid.n_x, ny = grid.n_y, nz = grid.n_z;
    for (int l = l_begin; l < l_end; ++l) {
        const int L = l + 1;
        const std::array<const Complex*, 3> layers{cache.level(L - 1), cache.level(L),
                                                   cache.level(L + 1)};
        const StencilCoefficients& s = coeffs[l];
        Complex* plane = rhs.data() + grid.plane_size() * static_cast<std::size_t>(l - l_begin);
        const bool whole_plane = (L == 1 || L == nz);
        for (int j = 1; j <= ny; ++j) {
            const bool edge_row = whole_plane || j == 1 || j == ny;
            Complex* row = plane + static_cast<std::size_t>(j - 1) * nx;
            if (edge_row) {
                for (int i = 1; i <= nx; ++i) row[i - 1] -= row_value(s, layers, cache.stride(), i, j);
            } else {
                // Rows away from every face see no boundary neighbours.
                row[0] -= row_value(s, layers, cache.stride(), 1, j);
                if (nx > 1) row[nx - 1] -= row_value(s, layers, cache.stride(), nx, j);
            }
        }
    }
}

Field3D fold_dirichlet(Field3D rhs, const BoundaryData& boundary, SchemeKind scheme,
                       const CoefficientProfile& profile, const Grid3D& grid) {
    check_field(rhs, grid);
    const auto coeffs = coefficient_table(scheme, profile, grid);
    fold_dirichlet_planes(boundary, coeffs, grid, 0, grid.n_z, rhs.values());
    return rhs;
}

Field3D apply_stencil(const Field3D& u, const BoundaryData& boundary,
                      const std::vector<StencilCoefficients>& coeffs, const Grid3D& grid) {
    check_field(u, grid);
    check_coeffs(coeffs, grid);
    Field3D out(grid.n_x, grid.n_y, grid.n_z);
    apply_planes(&u, boundary, coeffs, grid, 0, grid.n_z, out.values());
    return out;
}

Field3D apply_stencil(const Field3D& u, const BoundaryData& boundary, SchemeKind scheme,
                      const CoefficientProfile& profile, const Grid3D& grid) {
    return apply_stencil(u, boundary, coefficient_table(scheme, profile, grid), grid);
}

double residual_l2(const Field3D& u, const Field3D& rhs_folded, SchemeKind scheme,
                   const CoefficientProfile& profile, const Grid3D& grid) {
    if (!u.same_extents(rhs_folded)) {
        throw std::invalid_argument("residual_l2: extent mismatch between solution and rhs");
    }
    check_field(u, grid);
    const auto coeffs = coefficient_table(scheme, profile, grid);
    const BoundaryData none = BoundaryData::zero();
    std::vector<Complex> row_plane(grid.plane_size());
    double sum = 0.0;
    for (int l = 0; l < grid.n_z; ++l) {
        // Plane-at-a-time keeps memory at one plane; the cache is rebuilt per
        // plane, which costs three layer copies.
        apply_planes(&u, none, coeffs, grid, l, l + 1, row_plane);
        auto ref = rhs_folded.plane(l);
        for (std::size_t k = 0; k < row_plane.size(); ++k) sum += std::norm(row_plane[k] - ref[k]);
    }
    return std::sqrt(sum);
}

}  // namespace compact3d
