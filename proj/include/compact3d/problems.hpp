#pragma once

#include <string_view>

#include "compact3d/solver.hpp"

namespace compact3d {

/// k(z) = a - b sin(c z); u = sin(beta x) sin(gamma y) exp(-k(z)/c) on
/// [0, pi]^3, which solves the Helmholtz equation when
/// beta^2 + gamma^2 = a^2 + b^2.
struct HelmholtzParams {
    double a = 0.0, b = 0.0, c = 1.0, beta = 0.0, gamma = 0.0;
};

/// Exact solution and the derivatives needed to substitute it into the PDE.
struct SolutionJet {
    double u = 0.0;
    double u_z = 0.0;
    double u_xx = 0.0, u_yy = 0.0, u_zz = 0.0;
};

/// Throws std::invalid_argument when beta^2 + gamma^2 != a^2 + b^2
/// (relative 1e-12) or c == 0.
ProblemSpec helmholtz_problem(const HelmholtzParams& p, SchemeKind scheme, int n);
ProblemSpec helmholtz_problem(const HelmholtzParams& p, SchemeKind scheme, int n_x, int n_y,
                              int n_z);

double helmholtz_k(const HelmholtzParams& p, double z);
SolutionJet helmholtz_solution(const HelmholtzParams& p, double x, double y, double z);
/// f and all its derivatives used by the high-order right-hand sides.
SourceJet helmholtz_source(const HelmholtzParams& p, double x, double y, double z);

/// Convection-diffusion test on [0, sqrt2]^2 x [0, 1] with zero source and
/// sine-mode data on the z faces. Throws std::invalid_argument for gamma == 0.
ProblemSpec convdiff_problem(double gamma, int n);
ProblemSpec convdiff_problem(double gamma, int n_x, int n_y, int n_z);
SolutionJet convdiff_solution(double gamma, double x, double y, double z);

/// Named entries used by the command line: "const-k", "variable-k", "convdiff".
ProblemSpec catalog_problem(std::string_view id, SchemeKind scheme, int n_x, int n_y, int n_z);
HelmholtzParams constant_k_params();
HelmholtzParams variable_k_params();
inline constexpr double convdiff_gamma = -100.0;

struct ErrorMetrics {
    double max_err = 0.0;  // max |u - U| over interior nodes
    double l2_err = 0.0;   // ||u - U||_2 / ||u||_2 over interior nodes
};

/// Throws std::invalid_argument when `analytic` is empty or extents differ.
ErrorMetrics error_metrics(const Field3D& numeric, const ScalarField& analytic, const Grid3D& grid);

}  // namespace compact3d
