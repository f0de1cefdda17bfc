// compact3d: solve, convergence study and scaling benchmark front end.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "compact3d/dense.hpp"
#include "compact3d/harness.hpp"

using namespace compact3d;

namespace {

struct Options {
    std::string scheme = "2";
    std::string problem = "variable-k";
    std::vector<std::string> grids{"32"};
    std::string mode = "seq";
    std::vector<int> workers{1};
    std::vector<int> parts{1};
    std::string transform = "plane";
    std::string transport = "inproc";
    std::string format = "csv";
    std::string out;
    bool oracle = false;
};

// Quotes go through unchanged apart from escaping, so the line stays one token.
std::string quoted(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += (c == '\n') ? ' ' : c;
    }
    return r + "\"";
}

int fail(const char* kind, const std::string& message, int code) {
    std::cerr << "error kind=" << kind << " message=" << quoted(message) << '\n';
    return code;
}

SolverConfig make_config(const Options& o, int workers, int parts) {
    const auto t = o.transform == "line" ? TransformParallelism::PerLineBatch
                                         : TransformParallelism::PerPlane;
    const auto tr = o.transport == "socket" ? TransportKind::Socket : TransportKind::InProcess;
    if (o.mode == "seq") return SolverConfig::sequential();
    if (o.mode == "shared") return SolverConfig::shared(workers, t);
    return SolverConfig::partitioned(parts, workers, t, tr);
}

void write_rows(const std::vector<MetricsRow>& rows, const Options& o) {
    const TableFormat f = parse_format(o.format);
    if (o.out.empty()) {
        std::cout << format_table(rows, f);
    } else {
        emit_table(rows, f, o.out);
    }
}

int run_solve(const Options& o) {
    if (o.grids.size() != 1) throw std::invalid_argument("solve takes exactly one --grid");
    const SchemeKind scheme = parse_scheme(o.scheme);
    const GridSize g = parse_grid(o.grids.front());
    const SolverConfig config = make_config(o, o.workers.front(), o.parts.front());
    write_rows({run_single(o.problem, scheme, g, config)}, o);

    if (o.oracle) {
        if (g.n_x > 8 || g.n_y > 8 || g.n_z > 8) {
            throw std::invalid_argument("--oracle is limited to grids of at most 8^3");
        }
        const ProblemSpec p = catalog_problem(o.problem, scheme, g.n_x, g.n_y, g.n_z);
        const SolveReport fast = solve_direct_report(p, config);
        const Field3D ref =
            dense::solve_field(fast.rhs, coefficient_table(p.scheme, p.profile, p.grid), p.grid);
        double scale = 0.0;
        for (const Complex& v : ref.values()) scale = std::max(scale, std::abs(v));
        const double rel = max_abs_difference(fast.solution, ref) / std::max(scale, 1e-300);
        std::cerr << "oracle rel_diff=" << rel << '\n';
        if (rel > 1e-12) return fail("oracle", "fast solver differs from dense elimination", 4);
    }
    return 0;
}

int run_convergence_verb(const Options& o) {
    std::vector<GridSize> grids;
    for (const auto& s : o.grids) grids.push_back(parse_grid(s));
    const SolverConfig config = make_config(o, o.workers.front(), o.parts.front());
    const ConvergenceResult r = run_convergence(parse_scheme(o.scheme), o.problem, grids, config);
    write_rows(r.rows, o);
    int code = 0;
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        if (r.rows[k].failed) {
            std::cerr << "row " << r.rows[k].grid << " failed: " << r.rows[k].error << '\n';
            code = 4;
        }
    }
    for (std::size_t k = 0; k < r.max_err_orders.size(); ++k) {
        std::cerr << "order " << r.rows[k].grid << " -> " << r.rows[k + 1].grid << ":";
        if (r.max_err_orders[k]) {
            std::fprintf(stderr, " max_err %.4f l2_err %.4f\n", *r.max_err_orders[k],
                         *r.l2_err_orders[k]);
        } else {
            std::cerr << " n/a\n";
        }
    }
    if (code) return fail("solver", "one or more convergence rows failed", code);
    return 0;
}

int run_scaling_verb(const Options& o) {
    if (o.grids.size() != 1) throw std::invalid_argument("scaling takes exactly one --grid");
    std::vector<SolverConfig> configs;
    if (o.mode == "partitioned") {
        for (int p : o.parts)
            for (int w : o.workers) configs.push_back(make_config(o, w, p));
    } else {
        for (int w : o.workers) configs.push_back(make_config(o, w, 1));
    }
    const auto rows =
        run_scaling(parse_scheme(o.scheme), o.problem, parse_grid(o.grids.front()), configs);
    write_rows(rows, o);
    for (const auto& r : rows) {
        std::fprintf(stderr, "speedup %s: %.3f\n", r.config.c_str(),
                     rows.front().times.total / r.times.total);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Direct solver for 27-point compact stencils"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.require_subcommand(1);

    Options o;
    app.add_option("--scheme", o.scheme)->check(CLI::IsMember({"2", "4", "6", "cd4"}));
    app.add_option("--problem", o.problem)
        ->check(CLI::IsMember({"const-k", "variable-k", "convdiff"}));
    app.add_option("--grid", o.grids, "N or NX,NY,NZ; repeat for convergence studies");
    app.add_option("--mode", o.mode)->check(CLI::IsMember({"seq", "shared", "partitioned"}));
    app.add_option("--workers", o.workers, "comma list allowed for scaling")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    app.add_option("--parts", o.parts, "comma list allowed for scaling")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    app.add_option("--transform", o.transform)->check(CLI::IsMember({"plane", "line"}));
    app.add_option("--transport", o.transport)->check(CLI::IsMember({"inproc", "socket"}));
    app.add_option("--format", o.format)->check(CLI::IsMember({"csv", "md"}));
    app.add_option("--out", o.out);
    app.add_flag("--oracle", o.oracle, "cross-check against dense elimination (grids <= 8^3)");

    auto* solve = app.add_subcommand("solve", "solve one problem and report errors")->fallthrough();
    auto* conv = app.add_subcommand("convergence", "errors and observed orders over grids")
                     ->fallthrough();
    auto* scal = app.add_subcommand("scaling", "timings across worker counts")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (*solve) return run_solve(o);
        if (*conv) return run_convergence_verb(o);
        if (*scal) return run_scaling_verb(o);
    } catch (const SingularSystem& e) {
        return fail("singular", e.what(), 4);
    } catch (const ExchangeError& e) {
        return fail("exchange", e.what(), 5);
    } catch (const std::invalid_argument& e) {
        return fail("config", e.what(), 3);
    } catch (const std::exception& e) {
        return fail("runtime", e.what(), 1);
    }
    return 0;
}
