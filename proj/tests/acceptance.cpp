// Acceptance criteria for the solver. One PASS/FAIL line per criterion.
//
//   acceptance            run criteria 1-9 and 11
//   acceptance 10 3       run the listed criteria only

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "compact3d/dense.hpp"
#include "compact3d/harness.hpp"
#include "compact3d/partition.hpp"
#include "compact3d/spectral.hpp"
#include "compact3d/transport.hpp"
#include "compact3d/workers.hpp"
#include "oracle.hpp"

using namespace compact3d;

namespace {

constexpr double table_tolerance = 0.01;    // relative, criteria 1-4
constexpr double residual_ceiling = 1e-9;   // criterion 5
constexpr double oracle_tolerance = 1e-12;  // criterion 6, relative
constexpr double diagonal_tolerance = 1e-12;
constexpr double invariant_tolerance = 1e-13;
constexpr double mode_tolerance = 1e-13;    // criterion 9
constexpr double speedup_floor = 2.5;       // criterion 10
constexpr int scaling_grid = 256;

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---- shared regression runs -------------------------------------------------

std::map<std::string, MetricsRow> runs;

const MetricsRow& regression(const std::string& problem, SchemeKind scheme, int n) {
    const std::string key = problem + "/" + std::string(to_string(scheme)) + "/" + std::to_string(n);
    auto it = runs.find(key);
    if (it == runs.end()) {
        it = runs.emplace(key, run_single(problem, scheme, {n, n, n}, SolverConfig::sequential()))
                 .first;
        std::fprintf(stderr, "  [run] %-28s max_err=%.7e l2_err=%.7e l2_res=%.3e (%.1fs)\n",
                     key.c_str(), it->second.max_err, it->second.l2_err, it->second.l2_res,
                     it->second.times.total);
    }
    return it->second;
}

void against_table(Outcome& o, const MetricsRow& r, double max_ref, double l2_ref = 0.0) {
    const double rel = std::abs(r.max_err - max_ref) / max_ref;
    o.check(rel <= table_tolerance, r.grid + " max_err " + fmt("%.7e", r.max_err) + " vs " +
                                        fmt("%.7e", max_ref) + " (" + fmt("%.2f%%", 100 * rel) + ")");
    if (l2_ref > 0) {
        const double rel2 = std::abs(r.l2_err - l2_ref) / l2_ref;
        o.check(rel2 <= table_tolerance, r.grid + " l2_err " + fmt("%.7e", r.l2_err) + " vs " +
                                             fmt("%.7e", l2_ref) + " (" + fmt("%.2f%%", 100 * rel2) +
                                             ")");
    }
}

// ---- criteria ---------------------------------------------------------------

Outcome c1() {
    Outcome o;
    against_table(o, regression("variable-k", SchemeKind::SecondOrder, 125), 5.7570466e-03,
                  6.4986713e-03);
    against_table(o, regression("variable-k", SchemeKind::SecondOrder, 250), 1.4853854e-03,
                  1.6510028e-03);
    return o;
}

Outcome c2() {
    Outcome o;
    against_table(o, regression("variable-k", SchemeKind::FourthOrder, 125), 3.4493268e-05);
    against_table(o, regression("variable-k", SchemeKind::FourthOrder, 250), 2.1782070e-06);
    return o;
}

Outcome c3() {
    Outcome o;
    against_table(o, regression("variable-k", SchemeKind::SixthOrder, 125), 2.1875397e-06);
    against_table(o, regression("variable-k", SchemeKind::SixthOrder, 250), 3.4942928e-08);
    return o;
}

Outcome c4() {
    Outcome o;
    const auto cd = SchemeKind::ConvectionDiffusion4;
    against_table(o, regression("convdiff", cd, 64), 3.2612907e-03);
    against_table(o, regression("convdiff", cd, 128), 2.0579387e-04);
    against_table(o, regression("convdiff", cd, 256), 1.2939970e-05);
    return o;
}

Outcome c5() {
    Outcome o;
    for (auto s : {SchemeKind::SecondOrder, SchemeKind::FourthOrder, SchemeKind::SixthOrder})
        for (int n : {125, 250}) regression("variable-k", s, n);
    for (int n : {64, 128, 256}) regression("convdiff", SchemeKind::ConvectionDiffusion4, n);
    double worst = 0;
    for (const auto& [key, row] : runs) {
        worst = std::max(worst, row.l2_res);
        o.check(row.l2_res <= residual_ceiling, key + " l2_res " + fmt("%.3e", row.l2_res));
    }
    o.note(std::to_string(runs.size()) + " runs, worst l2_res " + fmt("%.3e", worst));
    return o;
}

ProblemSpec random_spec(SchemeKind scheme, int n, unsigned seed) {
    ProblemSpec p;
    p.scheme = scheme;
    p.grid = scheme == SchemeKind::SixthOrder ? make_grid({0, 1, 0, 1, 0, 1}, n, n, n)
                                              : make_grid({0, 1.5, 0, 0.8, 0, 1}, n, n, n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    const double k0 = 3 + u(rng), k1 = u(rng);
    p.profile = sample_profile([=](double z) { return Complex(k0 + k1 * z * z, 0.3); },
                               [=](double z) { return Complex(2 * k1 * z, 0); },
                               [=](double) { return Complex(2 * k1, 0); },
                               scheme == SchemeKind::ConvectionDiffusion4 ? Complex(20 * u(rng))
                                                                          : Complex{},
                               p.grid);
    auto hash = [seed](double a, double b, double c) {
        std::mt19937_64 r(seed ^ std::hash<double>{}(a * 7.1 + b * 13.3 + c * 29.7));
        std::uniform_real_distribution<double> d(-1, 1);
        return Complex(d(r), d(r));
    };
    p.source.f = hash;
    p.source.jet = [hash](double a, double b, double c) {
        SourceJet s;
        s.f = hash(a, b, c);
        s.f_z = hash(b, c, a);
        s.f_zz = hash(c, a, b);
        return s;
    };
    const Grid3D g = p.grid;
    p.boundary = {[hash, g](int i, int j, int l) { return hash(g.x(i), g.y(j), g.z(l) + 5); }};
    return p;
}

Outcome c6() {
    Outcome o;
    double worst = 0;
    for (int n : {4, 6})
        for (auto s : {SchemeKind::SecondOrder, SchemeKind::FourthOrder, SchemeKind::SixthOrder,
                       SchemeKind::ConvectionDiffusion4}) {
            const ProblemSpec p = random_spec(s, n, 100 + n);
            const auto table = coefficient_table(s, p.profile, p.grid);
            Field3D rhs = build_rhs(s, p.source, p.profile, p.grid);
            const auto bg = dense::boundary_contribution(table, p.grid, p.boundary);
            for (std::size_t k = 0; k < bg.size(); ++k) rhs.values()[k] -= bg[k];
            const Field3D ref = dense::solve_field(rhs, table, p.grid);
            const Field3D got = solve_direct(p, SolverConfig::sequential());
            double scale = 0;
            for (auto v : ref.values()) scale = std::max(scale, std::abs(v));
            const double rel = max_abs_difference(got, ref) / scale;
            worst = std::max(worst, rel);
            o.check(rel <= oracle_tolerance, std::string(to_string(s)) + " " +
                                                 std::to_string(n) + "^3 rel " + fmt("%.2e", rel));
        }
    o.note("worst relative difference " + fmt("%.2e", worst));
    return o;
}

Outcome c7() {
    Outcome o;
    double worst = 0;
    for (int n : {4, 8}) {
        const auto v1 = oracle::sine_matrix(n);
        const int N = n * n;
        std::vector<Complex> V(N * N);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) V[a * N + b] = v1[(a % n) * n + b % n] * v1[(a / n) * n + b / n];
        for (auto s : {SchemeKind::SecondOrder, SchemeKind::FourthOrder, SchemeKind::SixthOrder,
                       SchemeKind::ConvectionDiffusion4}) {
            const ProblemSpec p = random_spec(s, n, 7 * n);
            const auto table = coefficient_table(s, p.profile, p.grid);
            for (int lvl : {0, n / 2, n - 1})
                for (int layer = 0; layer < 3; ++layer) {
                    const LayerWeights& w = table[lvl].layer[layer];
                    std::vector<Complex> C(N * N);
                    for (int j = 0; j < n; ++j)
                        for (int i = 0; i < n; ++i)
                            for (int dj = -1; dj <= 1; ++dj)
                                for (int di = -1; di <= 1; ++di) {
                                    const int ii = i + di, jj = j + dj;
                                    if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
                                    C[(i + n * j) * N + ii + n * jj] =
                                        (di && dj) ? w.a : di ? w.b : dj ? w.c : w.d;
                                }
                    const auto D = oracle::matmul(V, oracle::matmul(C, V, N), N);
                    double err = 0;
                    for (int a = 0; a < N; ++a)
                        for (int b = 0; b < N; ++b) {
                            const Complex expect =
                                a == b ? eigenvalue(table[lvl], StencilCoefficients::Layer(layer),
                                                    a % n + 1, a / n + 1, p.grid)
                                       : Complex{};
                            err = std::max(err, std::abs(D[a * N + b] - expect));
                        }
                    worst = std::max(worst, err);
                    o.check(err <= diagonal_tolerance,
                            std::string(to_string(s)) + " n=" + std::to_string(n) + " err " +
                                fmt("%.2e", err));
                }
        }
    }
    o.note("worst off-formula entry " + fmt("%.2e", worst));
    return o;
}

Outcome c8() {
    Outcome o;
    // zero row sums
    const Grid3D aniso = make_grid({0, 1.7, 0, 0.6, 0, 1}, 6, 6, 6);
    const Grid3D iso = make_grid({0, 1, 0, 1, 0, 1}, 6, 6, 6);
    for (auto s : {SchemeKind::SecondOrder, SchemeKind::FourthOrder, SchemeKind::SixthOrder,
                   SchemeKind::ConvectionDiffusion4}) {
        const Grid3D& g = s == SchemeKind::SixthOrder ? iso : aniso;
        for (const auto& row : coefficient_table(s, zero_profile(g), g))
            o.check(std::abs(row.row_sum()) <= invariant_tolerance,
                    "row sum " + std::string(to_string(s)));
    }
    // convection-diffusion with gamma = 0 against fourth order with k^2 = 0
    const auto cd = coefficient_table(SchemeKind::ConvectionDiffusion4, zero_profile(aniso), aniso);
    const auto f4 = coefficient_table(SchemeKind::FourthOrder, zero_profile(aniso), aniso);
    bool same = true;
    for (std::size_t l = 0; l < cd.size(); ++l)
        for (int k = 0; k < 3; ++k)
            same &= std::abs(cd[l].layer[k].a - f4[l].layer[k].a) +
                        std::abs(cd[l].layer[k].b - f4[l].layer[k].b) +
                        std::abs(cd[l].layer[k].c - f4[l].layer[k].c) +
                        std::abs(cd[l].layer[k].d - f4[l].layer[k].d) <=
                    invariant_tolerance;
    o.check(same, "cd4(gamma=0) differs from fourth order(k=0)");
    // DST involution and norm
    for (int n : {7, 12}) {
        const auto plan = make_plan(n, n + 1);
        const auto x = oracle::random_values(n * (n + 1), n);
        auto y = x;
        dst2d(plan, y);
        double nx = 0, ny = 0;
        for (std::size_t k = 0; k < x.size(); ++k) nx += std::norm(x[k]), ny += std::norm(y[k]);
        o.check(std::abs(std::sqrt(nx) - std::sqrt(ny)) <= invariant_tolerance * std::sqrt(nx),
                "DST norm");
        dst2d(plan, y);
        o.check(oracle::max_abs_diff(x, y) <= invariant_tolerance, "DST involution");
    }
    // exchange round trip, with exact block volumes
    for (int parts : {2, 3, 4}) {
        const int nx = 6, ny = 7, nz = 9;
        const Field3D f = oracle::random_field(nx, ny, nz, parts);
        const ExchangePlan plan = make_exchange_plan(nx, ny, nz, parts);
        InProcessTransport t(parts);
        std::vector<std::vector<Complex>> back(parts);
        run_workers(parts, [&](int p) {
            const Range z = plan.partition.z[p];
            auto slab = f.values().subspan(f.plane_size() * z.begin, f.plane_size() * z.size());
            back[p] = exchange_inverse(plan, t, p, exchange_forward(plan, t, p, slab));
        });
        bool exact = true;
        for (int p = 0; p < parts; ++p) {
            const Range z = plan.partition.z[p];
            for (std::size_t k = 0; k < back[p].size(); ++k)
                exact &= back[p][k] == f.values()[f.plane_size() * z.begin + k];
            for (int q = 0; q < parts; ++q)
                exact &= plan.forward_block_shape(p, q).volume() ==
                         std::size_t(nx) * plan.partition.y[q].size() * plan.partition.z[p].size();
        }
        o.check(exact, "exchange round trip np=" + std::to_string(parts));
    }
    // partition sizes
    auto sizes = [](int n, int p) {
        std::vector<int> s;
        for (const auto& r : plan_partition(n, p)) s.push_back(r.size());
        return s;
    };
    o.check(sizes(10, 4) == std::vector<int>{3, 3, 2, 2}, "partition 10/4");
    o.check(sizes(125, 2) == std::vector<int>{63, 62}, "partition 125/2");
    o.check(sizes(8, 8) == std::vector<int>(8, 1), "partition 8/8");
    return o;
}

Outcome c9() {
    Outcome o;
    const int n = 64;
    double worst = 0;
    const std::vector<SolverConfig> configs = {
        SolverConfig::shared(2), SolverConfig::shared(4),
        SolverConfig::shared(4, TransformParallelism::PerLineBatch),
        SolverConfig::partitioned(2, 1), SolverConfig::partitioned(4, 1),
        SolverConfig::partitioned(4, 2, TransformParallelism::PerLineBatch),
        SolverConfig::partitioned(2, 1, TransformParallelism::PerPlane, TransportKind::Socket)};
    for (auto s : {SchemeKind::SecondOrder, SchemeKind::FourthOrder, SchemeKind::SixthOrder,
                   SchemeKind::ConvectionDiffusion4}) {
        const ProblemSpec p = catalog_problem(
            s == SchemeKind::ConvectionDiffusion4 ? "convdiff" : "variable-k", s, n, n, n);
        const Field3D ref = solve_direct(p, SolverConfig::sequential());
        for (const auto& c : configs) {
            const double d = max_abs_difference(solve_direct(p, c), ref);
            worst = std::max(worst, d);
            o.check(d <= mode_tolerance,
                    std::string(to_string(s)) + " " + describe(c) + " diff " + fmt("%.2e", d));
        }
    }
    o.note("worst difference " + fmt("%.2e", worst));
    return o;
}

Outcome c10() {
    Outcome o;
    const int n = scaling_grid;
    const auto rows = run_scaling(SchemeKind::SecondOrder, "variable-k", {n, n, n},
                                  {SolverConfig::shared(1), SolverConfig::shared(4)});
    const double speedup = rows[0].times.total / rows[1].times.total;
    o.check(speedup >= speedup_floor, "speedup " + fmt("%.2f", speedup) + " < " +
                                          fmt("%.1f", speedup_floor));
    o.note("1 worker " + fmt("%.2fs", rows[0].times.total) + ", 4 workers " +
           fmt("%.2fs", rows[1].times.total) + ", speedup " + fmt("%.2f", speedup) + ", " +
           std::to_string(std::thread::hardware_concurrency()) + " hardware threads");
    return o;
}

Outcome c11() {
    Outcome o;
    const std::pair<SchemeKind, std::pair<double, double>> bands[] = {
        {SchemeKind::SecondOrder, {1.8, 2.2}},
        {SchemeKind::FourthOrder, {3.7, 4.3}},
        {SchemeKind::SixthOrder, {5.6, 6.4}}};
    for (const auto& [s, band] : bands) {
        const MetricsRow& a = regression("variable-k", s, 125);
        const MetricsRow& b = regression("variable-k", s, 250);
        // h = pi/126 and pi/251
        const double p = observed_order(a.max_err, b.max_err, a.h, b.h);
        o.check(p >= band.first && p <= band.second,
                std::string(to_string(s)) + " order " + fmt("%.3f", p) + " outside [" +
                    fmt("%.1f", band.first) + "," + fmt("%.1f", band.second) + "]");
        o.note(std::string(to_string(s)) + ": " + fmt("%.3f", p));
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<int, std::pair<const char*, std::function<Outcome()>>> criteria = {
        {1, {"second-order table regression", c1}},
        {2, {"fourth-order table regression", c2}},
        {3, {"sixth-order table regression", c3}},
        {4, {"convection-diffusion table regression", c4}},
        {5, {"residual floor", c5}},
        {6, {"dense oracle equivalence", c6}},
        {7, {"diagonalization", c7}},
        {8, {"structural invariants", c8}},
        {9, {"mode equivalence", c9}},
        {10, {"scaling with 4 workers", c10}},
        {11, {"convergence orders", c11}},
    };
    std::set<int> selected;
    for (int k = 1; k < argc; ++k) selected.insert(std::stoi(argv[k]));
    if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 11};

    int failed = 0;
    for (int id : selected) {
        const auto it = criteria.find(id);
        if (it == criteria.end()) {
            std::printf("criterion %d: FAIL unknown criterion\n", id);
            ++failed;
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = it->second.second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d: %s  %s (%.1fs) %s\n", id, o.pass ? "PASS" : "FAIL",
                    it->second.first, secs, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
