#include "compact3d/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace compact3d {

namespace {

/// z-dependent factor g(z) = sin(cz) exp(-k(z)/c) of the Helmholtz source and
/// its derivatives up to fourth order.
struct ZFactor {
    double e;      // exp(-k/c)
    double p[5];   // e^(n) = p[n] * e
    double g[5];   // g^(n)
};

ZFactor z_factor(const HelmholtzParams& p, double z) {
    const double sn = std::sin(p.c * z);
    const double cs = std::cos(p.c * z);
    const double k = p.a - p.b * sn;
    ZFactor out{};
    out.e = std::exp(-k / p.c);

    // (-k/c)' = b cos(cz) =: phi; derivatives of exp(-k/c) follow from
    // P_{n+1} = P_n' + phi P_n.
    const double phi = p.b * cs;
    const double phi1 = -p.b * p.c * sn;
    const double phi2 = -p.b * p.c * p.c * cs;
    const double phi3 = p.b * p.c * p.c * p.c * sn;
    out.p[0] = 1.0;
    out.p[1] = phi;
    out.p[2] = phi1 + phi * phi;
    out.p[3] = phi2 + 3.0 * phi * phi1 + phi * phi * phi;
    out.p[4] = phi3 + 3.0 * phi1 * phi1 + 4.0 * phi * phi2 + 6.0 * phi * phi * phi1 +
               phi * phi * phi * phi;

    // sin(cz)^(n) = c^n sin(cz + n pi/2)
    const double c = p.c;
    const double s[5] = {sn, c * cs, -c * c * sn, -c * c * c * cs, c * c * c * c * sn};
    static constexpr double binom[5][5] = {
        {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
    for (int n = 0; n < 5; ++n) {
        double acc = 0.0;
        for (int j = 0; j <= n; ++j) acc += binom[n][j] * s[j] * out.p[n - j];
        out.g[n] = acc * out.e;
    }
    return out;
}

void check_params(const HelmholtzParams& p) {
    if (p.c == 0.0) throw std::invalid_argument("helmholtz problem: c must be nonzero");
    const double lhs = p.beta * p.beta + p.gamma * p.gamma;
    const double rhs = p.a * p.a + p.b * p.b;
    if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs))) {
        throw std::invalid_argument("helmholtz problem: beta^2 + gamma^2 = " + std::to_string(lhs) +
                                    " but a^2 + b^2 = " + std::to_string(rhs));
    }
}

Domain cube_pi() {
    const double pi = std::numbers::pi;
    return {0.0, pi, 0.0, pi, 0.0, pi};
}

}  // namespace

double helmholtz_k(const HelmholtzParams& p, double z) { return p.a - p.b * std::sin(p.c * z); }

SolutionJet helmholtz_solution(const HelmholtzParams& p, double x, double y, double z) {
    const double s = std::sin(p.beta * x) * std::sin(p.gamma * y);
    const ZFactor zf = z_factor(p, z);
    SolutionJet j;
    j.u = s * zf.e;
    j.u_z = s * zf.p[1] * zf.e;
    j.u_zz = s * zf.p[2] * zf.e;
    j.u_xx = -p.beta * p.beta * j.u;
    j.u_yy = -p.gamma * p.gamma * j.u;
    return j;
}

SourceJet helmholtz_source(const HelmholtzParams& p, double x, double y, double z) {
    const double amp = -p.b * (2.0 * p.a + p.c) * std::sin(p.beta * x) * std::sin(p.gamma * y);
    const ZFactor zf = z_factor(p, z);
    const double b2 = p.beta * p.beta;
    const double g2 = p.gamma * p.gamma;
    const double f = amp * zf.g[0];
    const double f_zz = amp * zf.g[2];
    SourceJet s;
    s.f = f;
    s.f_z = amp * zf.g[1];
    s.f_xx = -b2 * f;
    s.f_yy = -g2 * f;
    s.f_zz = f_zz;
    s.laplacian = -(b2 + g2) * f + f_zz;
    s.bilaplacian = (b2 + g2) * (b2 + g2) * f - 2.0 * (b2 + g2) * f_zz + amp * zf.g[4];
    s.f_xxyy = b2 * g2 * f;
    s.f_xxzz = -b2 * f_zz;
    s.f_yyzz = -g2 * f_zz;
    return s;
}

ProblemSpec helmholtz_problem(const HelmholtzParams& p, SchemeKind scheme, int n_x, int n_y,
                              int n_z) {
    check_params(p);
    if (scheme == SchemeKind::ConvectionDiffusion4) {
        throw std::invalid_argument("helmholtz problem cannot use the convection-diffusion scheme");
    }
    ProblemSpec spec;
    spec.scheme = scheme;
    spec.grid = make_grid(cube_pi(), n_x, n_y, n_z);
    spec.profile = sample_profile(
        [p](double z) -> Complex {
            const double k = helmholtz_k(p, z);
            return k * k;
        },
        [p](double z) -> Complex {
            const double k = helmholtz_k(p, z);
            const double dk = -p.b * p.c * std::cos(p.c * z);
            return 2.0 * k * dk;
        },
        [p](double z) -> Complex {
            const double k = helmholtz_k(p, z);
            const double dk = -p.b * p.c * std::cos(p.c * z);
            const double ddk = p.b * p.c * p.c * std::sin(p.c * z);
            return 2.0 * (dk * dk + k * ddk);
        },
        Complex{}, spec.grid);

    if (p.b != 0.0) {
        spec.source.f = [p](double x, double y, double z) -> Complex {
            return helmholtz_source(p, x, y, z).f;
        };
        spec.source.jet = [p](double x, double y, double z) {
            return helmholtz_source(p, x, y, z);
        };
    }
    spec.analytic = [p](double x, double y, double z) -> Complex {
        return helmholtz_solution(p, x, y, z).u;
    };
    spec.boundary = BoundaryData::from_function(spec.grid, spec.analytic);
    return spec;
}

ProblemSpec helmholtz_problem(const HelmholtzParams& p, SchemeKind scheme, int n) {
    return helmholtz_problem(p, scheme, n, n, n);
}

SolutionJet convdiff_solution(double gamma, double x, double y, double z) {
    const double pi = std::numbers::pi;
    const double r2 = std::numbers::sqrt2;
    const double sigma = std::sqrt(pi * pi + gamma * gamma / 4.0);
    const double s = std::sin(pi * x / r2) * std::sin(pi * y / r2);
    const double sh = std::sinh(sigma);
    // u = s * exp(-gamma z/2) Q(z) / sinh(sigma), with Q'' = sigma^2 Q.
    const double grow = 2.0 * std::exp(gamma * (1.0 - z) / 2.0);
    const double decay = std::exp(-gamma * z / 2.0);
    const double q_scaled = grow * std::sinh(sigma * z) + decay * std::sinh(sigma * (1.0 - z));
    const double dq_scaled =
        sigma * (grow * std::cosh(sigma * z) - decay * std::cosh(sigma * (1.0 - z)));
    const double zf = q_scaled / sh;
    const double dzf = (-gamma / 2.0 * q_scaled + dq_scaled) / sh;
    const double ddzf = ((gamma * gamma / 4.0 + sigma * sigma) * q_scaled - gamma * dq_scaled) / sh;
    SolutionJet j;
    j.u = s * zf;
    j.u_z = s * dzf;
    j.u_zz = s * ddzf;
    j.u_xx = -(pi * pi / 2.0) * j.u;
    j.u_yy = -(pi * pi / 2.0) * j.u;
    return j;
}

ProblemSpec convdiff_problem(double gamma, int n_x, int n_y, int n_z) {
    if (gamma == 0.0) {
        throw std::invalid_argument("convection-diffusion problem needs gamma != 0");
    }
    const double r2 = std::numbers::sqrt2;
    ProblemSpec spec;
    spec.scheme = SchemeKind::ConvectionDiffusion4;
    spec.grid = make_grid({0.0, r2, 0.0, r2, 0.0, 1.0}, n_x, n_y, n_z);
    spec.profile = zero_profile(spec.grid, Complex{gamma, 0.0});
    spec.source = SourceSpec::zero();
    spec.analytic = [gamma](double x, double y, double z) -> Complex {
        return convdiff_solution(gamma, x, y, z).u;
    };
    const Grid3D g = spec.grid;
    spec.boundary.value = [g](int i, int j, int l) -> Complex {
        if (i == 0 || i == g.n_x + 1 || j == 0 || j == g.n_y + 1) return {};
        const double pi = std::numbers::pi;
        const double s = std::sin(pi * g.x(i) / std::numbers::sqrt2) *
                         std::sin(pi * g.y(j) / std::numbers::sqrt2);
        if (l == 0) return s;
        if (l == g.n_z + 1) return 2.0 * s;
        // Interior levels on the lateral faces were handled above.
        return {};
    };
    return spec;
}

ProblemSpec convdiff_problem(double gamma, int n) { return convdiff_problem(gamma, n, n, n); }

HelmholtzParams constant_k_params() { return {20.0, 0.0, 10.0, 12.0, 16.0}; }
HelmholtzParams variable_k_params() { return {10.0, 9.0, 10.0, 10.0, 9.0}; }

ProblemSpec catalog_problem(std::string_view id, SchemeKind scheme, int n_x, int n_y, int n_z) {
    if (id == "const-k") return helmholtz_problem(constant_k_params(), scheme, n_x, n_y, n_z);
    if (id == "variable-k") return helmholtz_problem(variable_k_params(), scheme, n_x, n_y, n_z);
    if (id == "convdiff") {
        if (scheme != SchemeKind::ConvectionDiffusion4) {
            throw std::invalid_argument("problem convdiff requires scheme cd4");
        }
        return convdiff_problem(convdiff_gamma, n_x, n_y, n_z);
    }
    throw std::invalid_argument("unknown problem '" + std::string(id) +
                                "' (expected const-k, variable-k or convdiff)");
}

ErrorMetrics error_metrics(const Field3D& numeric, const ScalarField& analytic,
                           const Grid3D& grid) {
    if (!analytic) throw std::invalid_argument("error_metrics: no analytic solution");
    if (numeric.n_x() != grid.n_x || numeric.n_y() != grid.n_y || numeric.n_z() != grid.n_z) {
        throw std::invalid_argument("error_metrics: field extents do not match the grid");
    }
    double max_err = 0.0;
    double diff2 = 0.0;
    double ref2 = 0.0;
    for (int l = 0; l < grid.n_z; ++l) {
        const double z = grid.z(l + 1);
        for (int j = 0; j < grid.n_y; ++j) {
            const double y = grid.y(j + 1);
            for (int i = 0; i < grid.n_x; ++i) {
                const Complex exact = analytic(grid.x(i + 1), y, z);
                const Complex d = exact - numeric(i, j, l);
                max_err = std::max(max_err, std::abs(d));
                diff2 += std::norm(d);
                ref2 += std::norm(exact);
            }
        }
    }
    ErrorMetrics m;
    m.max_err = max_err;
    m.l2_err = ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
    return m;
}

}  // namespace compact3d
