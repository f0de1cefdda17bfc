#include "compact3d/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace compact3d {

namespace {

int parse_count(std::string_view text) {
    int value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || value < 1) {
        throw std::invalid_argument("bad grid extent '" + std::string(text) + "'");
    }
    return value;
}

std::string sci(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.7e", v);
    return buf;
}

std::string sig8(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

std::vector<std::string> row_fields(const MetricsRow& r) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {r.scheme,
            r.grid,
            sci(r.failed ? nan : r.max_err),
            sci(r.failed ? nan : r.l2_err),
            sci(r.failed ? nan : r.l2_res),
            sig8(r.times.setup),
            sig8(r.times.transform),
            sig8(r.times.exchange),
            sig8(r.times.tridiag),
            sig8(r.times.total)};
}

const std::vector<std::string>& header() {
    static const std::vector<std::string> h = {"scheme",      "grid",      "max_err",
                                               "l2_err",      "l2_res",    "setup_s",
                                               "transform_s", "exchange_s", "tridiag_s",
                                               "total_s"};
    return h;
}

}  // namespace

std::string GridSize::label() const {
    if (n_x == n_y && n_y == n_z) return std::to_string(n_x) + "^3";
    return std::to_string(n_x) + "x" + std::to_string(n_y) + "x" + std::to_string(n_z);
}

GridSize parse_grid(const std::string& text) {
    std::vector<std::string_view> parts;
    std::string_view rest(text);
    while (true) {
        const auto comma = rest.find(',');
        parts.push_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (parts.size() == 1) {
        const int n = parse_count(parts[0]);
        return {n, n, n};
    }
    if (parts.size() == 3) {
        return {parse_count(parts[0]), parse_count(parts[1]), parse_count(parts[2])};
    }
    throw std::invalid_argument("grid must be N or NX,NY,NZ, got '" + text + "'");
}

double observed_order(double err_coarse, double err_fine, double h_coarse, double h_fine) {
    return std::log(err_coarse / err_fine) / std::log(h_coarse / h_fine);
}

MetricsRow run_single(std::string_view problem_id, SchemeKind scheme, const GridSize& size,
                      const SolverConfig& config) {
    MetricsRow row;
    row.scheme = std::string(to_string(scheme));
    row.grid = size.label();
    row.config = describe(config);
    const ProblemSpec problem = catalog_problem(problem_id, scheme, size.n_x, size.n_y, size.n_z);
    row.h = std::max({problem.grid.h_x, problem.grid.h_y, problem.grid.h_z});
    SolveReport report = solve_direct_report(problem, config);
    row.times = report.times;
    const ErrorMetrics m = error_metrics(report.solution, problem.analytic, problem.grid);
    row.max_err = m.max_err;
    row.l2_err = m.l2_err;
    row.l2_res =
        residual_l2(report.solution, report.rhs, problem.scheme, problem.profile, problem.grid);
    return row;
}

ConvergenceResult run_convergence(SchemeKind scheme, std::string_view problem_id,
                                  const std::vector<GridSize>& grids, const SolverConfig& config) {
    for (std::size_t k = 1; k < grids.size(); ++k) {
        const auto& a = grids[k - 1];
        const auto& b = grids[k];
        if (b.n_x < a.n_x || b.n_y < a.n_y || b.n_z < a.n_z) {
            throw std::invalid_argument("convergence grids must be ascending");
        }
    }
    ConvergenceResult out;
    for (const GridSize& g : grids) {
        try {
            out.rows.push_back(run_single(problem_id, scheme, g, config));
        } catch (const std::exception& e) {
            MetricsRow row;
            row.scheme = std::string(to_string(scheme));
            row.grid = g.label();
            row.config = describe(config);
            row.failed = true;
            row.error = e.what();
            out.rows.push_back(std::move(row));
        }
    }
    for (std::size_t k = 1; k < out.rows.size(); ++k) {
        const MetricsRow& c = out.rows[k - 1];
        const MetricsRow& f = out.rows[k];
        if (c.failed || f.failed || c.h == f.h) {
            out.max_err_orders.emplace_back();
            out.l2_err_orders.emplace_back();
            continue;
        }
        out.max_err_orders.emplace_back(observed_order(c.max_err, f.max_err, c.h, f.h));
        out.l2_err_orders.emplace_back(observed_order(c.l2_err, f.l2_err, c.h, f.h));
    }
    return out;
}

std::vector<MetricsRow> run_scaling(SchemeKind scheme, std::string_view problem_id,
                                    const GridSize& size,
                                    const std::vector<SolverConfig>& configs) {
    const ProblemSpec problem = catalog_problem(problem_id, scheme, size.n_x, size.n_y, size.n_z);
    for (const SolverConfig& c : configs) validate_config(c, problem.grid);

    std::vector<MetricsRow> rows;
    Field3D reference;
    for (const SolverConfig& c : configs) {
        SolveReport report = solve_direct_report(problem, c);
        MetricsRow row;
        row.scheme = std::string(to_string(scheme));
        row.grid = size.label();
        row.config = describe(c);
        row.h = std::max({problem.grid.h_x, problem.grid.h_y, problem.grid.h_z});
        row.times = report.times;
        if (rows.empty()) {
            const ErrorMetrics m = error_metrics(report.solution, problem.analytic, problem.grid);
            row.max_err = m.max_err;
            row.l2_err = m.l2_err;
            row.l2_res = residual_l2(report.solution, report.rhs, problem.scheme, problem.profile,
                                     problem.grid);
            reference = std::move(report.solution);
        } else {
            const double diff = max_abs_difference(reference, report.solution);
            if (diff > 1e-13) {
                throw std::runtime_error("scaling: " + row.config + " differs from " +
                                         rows.front().config + " by " + sci(diff));
            }
            row.max_err = rows.front().max_err;
            row.l2_err = rows.front().l2_err;
            row.l2_res = rows.front().l2_res;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

TableFormat parse_format(std::string_view text) {
    if (text == "csv") return TableFormat::Csv;
    if (text == "md" || text == "markdown") return TableFormat::Markdown;
    throw std::invalid_argument("unknown table format '" + std::string(text) +
                                "' (expected csv or md)");
}

std::string format_table(const std::vector<MetricsRow>& rows, TableFormat format) {
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& fields) {
        if (format == TableFormat::Csv) {
            for (std::size_t k = 0; k < fields.size(); ++k) out << (k ? "," : "") << fields[k];
        } else {
            out << "|";
            for (const auto& f : fields) out << ' ' << f << " |";
        }
        out << '\n';
    };
    emit(header());
    if (format == TableFormat::Markdown) {
        emit(std::vector<std::string>(header().size(), "---"));
    }
    for (const MetricsRow& r : rows) emit(row_fields(r));
    return out.str();
}

void emit_table(const std::vector<MetricsRow>& rows, TableFormat format,
                const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    file << format_table(rows, format);
    file.close();
    if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace compact3d
