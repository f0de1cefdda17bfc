#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "compact3d/problems.hpp"
#include "compact3d/solver.hpp"

namespace compact3d {

struct GridSize {
    int n_x = 0, n_y = 0, n_z = 0;
    std::string label() const;  // "125^3" or "64x64x32"
};

/// "N" or "NX,NY,NZ".
GridSize parse_grid(const std::string& text);

struct MetricsRow {
    std::string scheme;
    std::string grid;
    std::string config;
    double max_err = 0.0;
    double l2_err = 0.0;
    double l2_res = 0.0;
    PhaseTimes times;
    double h = 0.0;  // largest grid step, used for order estimates
    bool failed = false;
    std::string error;
};

struct ConvergenceResult {
    std::vector<MetricsRow> rows;
    /// log(e1/e2)/log(h1/h2) of max_err between consecutive successful rows.
    std::vector<std::optional<double>> max_err_orders;
    std::vector<std::optional<double>> l2_err_orders;
};

/// Observed order from two (error, step) pairs.
double observed_order(double err_coarse, double err_fine, double h_coarse, double h_fine);

/// Solves, then measures errors against the analytic solution and the
/// algebraic residual.
MetricsRow run_single(std::string_view problem_id, SchemeKind scheme, const GridSize& grid,
                      const SolverConfig& config);

/// Grids must be ascending. Solver failures mark the row failed.
ConvergenceResult run_convergence(SchemeKind scheme, std::string_view problem_id,
                                  const std::vector<GridSize>& grids, const SolverConfig& config);

/// One row per config. Throws std::runtime_error when any two solutions
/// differ by more than 1e-13.
std::vector<MetricsRow> run_scaling(SchemeKind scheme, std::string_view problem_id,
                                    const GridSize& grid, const std::vector<SolverConfig>& configs);

enum class TableFormat { Csv, Markdown };
TableFormat parse_format(std::string_view text);

std::string format_table(const std::vector<MetricsRow>& rows, TableFormat format);
/// Throws std::runtime_error when the destination cannot be written.
void emit_table(const std::vector<MetricsRow>& rows, TableFormat format,
                const std::filesystem::path& path);

}  // namespace compact3d
