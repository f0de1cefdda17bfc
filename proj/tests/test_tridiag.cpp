#include <doctest.h>

#include <cmath>
#include <numbers>

#include "compact3d/dense.hpp"
#include "compact3d/problems.hpp"
#include "compact3d/spectral.hpp"
#include "compact3d/tridiag.hpp"
#include "compact3d/workers.hpp"
#include "oracle.hpp"

using namespace compact3d;

namespace {

SpectralSystem make(int n, Complex lo, Complex mid, Complex hi) {
    SpectralSystem s;
    s.n = s.m = 1;
    s.sub.assign(n, lo);
    s.diag.assign(n, mid);
    s.super.assign(n, hi);
    return s;
}

}  // namespace

TEST_CASE("hand-solved 3 x 3 system") {
    const auto s = make(3, -1, 2, -1);
    const std::vector<Complex> rhs{1, 0, 0};
    const auto x = solve_system(s, rhs);
    CHECK(std::abs(x[0] - 0.75) < 1e-15);
    CHECK(std::abs(x[1] - 0.5) < 1e-15);
    CHECK(std::abs(x[2] - 0.25) < 1e-15);
}

TEST_CASE("identity system returns the right-hand side") {
    const auto s = make(5, 0, 1, 0);
    const auto rhs = oracle::random_values(5, 1);
    CHECK(oracle::max_abs_diff(solve_system(s, rhs), rhs) == 0.0);
}

TEST_CASE("random diagonally dominant system against dense elimination") {
    const int n = 50;
    const auto lo = oracle::random_values(n, 2), hi = oracle::random_values(n, 3),
               d = oracle::random_values(n, 4), rhs = oracle::random_values(n, 5);
    SpectralSystem s;
    s.sub = lo;
    s.super = hi;
    s.diag = d;
    for (auto& v : s.diag) v += 4.0;
    dense::Matrix a;
    a.rows = n;
    a.values.assign(n * n, {});
    for (int r = 0; r < n; ++r) {
        a(r, r) = s.diag[r];
        if (r > 0) a(r, r - 1) = s.sub[r];
        if (r + 1 < n) a(r, r + 1) = s.super[r];
    }
    const auto ref = dense::solve(a, rhs);
    CHECK(oracle::max_abs_diff(solve_system(s, rhs), ref) < 1e-12 * oracle::max_abs(ref));
}

TEST_CASE("singular systems name their mode") {
    auto s = make(3, 1, 0, 1);
    s.n = 2;
    s.m = 5;
    const std::vector<Complex> rhs(3, 1.0);
    try {
        solve_system(s, rhs);
        FAIL("expected SingularSystem");
    } catch (const SingularSystem& e) {
        CHECK(e.n() == 2);
        CHECK(e.m() == 5);
    }
}

TEST_CASE("second order N_x = N_y = 1 system") {
    const Grid3D g = make_grid({0, 2, 0, 2, 0, 4}, 1, 1, 3);
    const auto s = assemble_system(1, 1, SchemeKind::SecondOrder, zero_profile(g), g);
    for (int r = 0; r < 3; ++r) {
        CHECK(std::abs(s.diag[r] - Complex(-6)) < 1e-15);
        if (r > 0) CHECK(std::abs(s.sub[r] - Complex(1)) < 1e-15);
        if (r < 2) CHECK(std::abs(s.super[r] - Complex(1)) < 1e-15);
    }
}

TEST_CASE("constant k gives identical rows") {
    const auto p = helmholtz_problem(constant_k_params(), SchemeKind::FourthOrder, 6);
    const auto s = assemble_system(2, 3, p.scheme, p.profile, p.grid);
    for (int r = 1; r < 5; ++r) {
        CHECK(std::abs(s.diag[r] - s.diag[1]) < 1e-13);
        CHECK(std::abs(s.sub[r] - s.sub[1]) < 1e-13);
        CHECK(std::abs(s.super[r] - s.super[1]) < 1e-13);
    }
}

TEST_CASE("blocks of the transformed operator are the spectral systems") {
    // (V2 x I) A (V2 x I), with V2 the plane transform, reordered by mode.
    const int n = 4;
    for (SchemeKind scheme : {SchemeKind::SecondOrder, SchemeKind::FourthOrder,
                              SchemeKind::SixthOrder}) {
        const auto p = helmholtz_problem(variable_k_params(), scheme, n);
        const auto table = coefficient_table(scheme, p.profile, p.grid);
        const auto A = dense::assemble(table, p.grid);
        const int P = n * n, N = P * n;
        const auto v1 = oracle::sine_matrix(n);
        std::vector<Complex> T(N * N);
        for (int l = 0; l < n; ++l)
            for (int a = 0; a < P; ++a)
                for (int b = 0; b < P; ++b)
                    T[(a + P * l) * N + b + P * l] = v1[(a % n) * n + b % n] * v1[(a / n) * n + b / n];
        const auto D = oracle::matmul(T, oracle::matmul(A.values, T, N), N);
        for (int mode = 0; mode < P; ++mode) {
            const auto s = assemble_system(mode % n + 1, mode / n + 1, table, p.grid);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    const Complex got = D[(mode + P * r) * N + mode + P * c];
                    const Complex expect = c == r       ? s.diag[r]
                                           : c == r - 1 ? s.sub[r]
                                           : c == r + 1 ? s.super[r]
                                                        : Complex{};
                    CHECK(std::abs(got - expect) < 1e-12);
                }
            // No coupling between different modes.
            const int other = (mode + 1) % P;
            CHECK(std::abs(D[(mode + P * 1) * N + other + P * 1]) < 1e-12);
        }
    }
}

TEST_CASE("line solves: zero in, zero out; split ranges are bit-identical") {
    const auto p = helmholtz_problem(variable_k_params(), SchemeKind::FourthOrder, 5, 4, 6);
    const Field3D zero(5, 4, 6);
    CHECK(max_abs_difference(solve_all(zero, p.scheme, p.profile, p.grid), zero) == 0.0);

    const Field3D rhs = oracle::random_field(5, 4, 6, 77);
    const Field3D full = solve_all(rhs, p.scheme, p.profile, p.grid);
    const Field3D a = solve_all(rhs, p.scheme, p.profile, p.grid, {0, 9});
    const Field3D b = solve_all(rhs, p.scheme, p.profile, p.grid, {9, 20});
    Field3D merged = rhs;
    for (int l = 0; l < 6; ++l)
        for (int k = 0; k < 20; ++k) merged.plane(l)[k] = (k < 9 ? a : b).plane(l)[k];
    CHECK(max_abs_difference(merged, full) == 0.0);
    // Untouched lines are copied through.
    CHECK(a.plane(2)[15] == rhs.plane(2)[15]);
}

TEST_CASE("transform + line solves + transform equals dense solve on 4^3") {
    const auto p = helmholtz_problem(variable_k_params(), SchemeKind::SecondOrder, 4);
    const auto table = coefficient_table(p.scheme, p.profile, p.grid);
    const Field3D rhs = oracle::random_field(4, 4, 4, 8);
    const auto plan = make_plan(4, 4);
    Field3D work = rhs;
    transform_stack(plan, work, 0, 4);
    work = solve_all(work, p.scheme, p.profile, p.grid);
    transform_stack(plan, work, 0, 4);
    const Field3D ref = dense::solve_field(rhs, table, p.grid);
    double scale = 0;
    for (auto v : ref.values()) scale = std::max(scale, std::abs(v));
    CHECK(max_abs_difference(work, ref) <= 1e-12 * scale);
}

TEST_CASE("real symmetric systems keep real data real") {
    const auto p = helmholtz_problem(variable_k_params(), SchemeKind::SecondOrder, 6);
    const auto s = assemble_system(3, 2, p.scheme, p.profile, p.grid);
    std::vector<Complex> rhs(6);
    for (int r = 0; r < 6; ++r) rhs[r] = std::cos(r + 0.5);
    for (const auto& x : solve_system(s, rhs)) CHECK(std::abs(x.imag()) <= 1e-14);
}
