#pragma once

#include <string>

#include "compact3d/assembly.hpp"
#include "compact3d/field.hpp"
#include "compact3d/grid.hpp"
#include "compact3d/stencil.hpp"

namespace compact3d {

/// Everything needed to assemble one discrete problem.
struct ProblemSpec {
    SchemeKind scheme = SchemeKind::SecondOrder;
    Grid3D grid;
    CoefficientProfile profile;
    SourceSpec source;
    BoundaryData boundary;
    /// Exact solution, when known. Empty otherwise.
    ScalarField analytic;
};

enum class ExecutionMode { Sequential, SharedWorkers, Partitioned };

/// PerPlane gives each worker whole z-planes; PerLineBatch splits the
/// 1D x-line and y-line passes across workers.
enum class TransformParallelism { PerPlane, PerLineBatch };

enum class TransportKind { InProcess, Socket };

struct SolverConfig {
    ExecutionMode mode = ExecutionMode::Sequential;
    int workers = 1;            // SharedWorkers: worker count; Partitioned: workers per part
    int parts = 1;              // Partitioned only
    TransformParallelism transform = TransformParallelism::PerPlane;
    TransportKind transport = TransportKind::InProcess;

    static SolverConfig sequential() { return {}; }
    static SolverConfig shared(int workers,
                               TransformParallelism t = TransformParallelism::PerPlane) {
        return {ExecutionMode::SharedWorkers, workers, 1, t, TransportKind::InProcess};
    }
    static SolverConfig partitioned(int parts, int workers_per_part,
                                    TransformParallelism t = TransformParallelism::PerPlane,
                                    TransportKind transport = TransportKind::InProcess) {
        return {ExecutionMode::Partitioned, workers_per_part, parts, t, transport};
    }
};

std::string describe(const SolverConfig& config);

/// Throws std::invalid_argument when `config` cannot run on `grid`.
void validate_config(const SolverConfig& config, const Grid3D& grid);

/// Wall-clock seconds per phase. For partitioned runs each phase is the
/// slowest part's time.
struct PhaseTimes {
    double setup = 0.0;      // coefficients, rhs, boundary fold, plans
    double transform = 0.0;  // forward and inverse DST
    double exchange = 0.0;   // re-indexing or inter-part redistribution
    double tridiag = 0.0;
    double total = 0.0;
};

struct SolveReport {
    Field3D solution;
    Field3D rhs;  // folded right-hand side that was solved for
    PhaseTimes times;
};

/// Direct solve of the 27-point system: rhs assembly and boundary fold,
/// forward DST per plane, redistribution to z-lines, tridiagonal solves,
/// redistribution back, inverse DST. Throws SingularSystem, ExchangeError
/// or std::invalid_argument.
Field3D solve_direct(const ProblemSpec& problem, const SolverConfig& config);
SolveReport solve_direct_report(const ProblemSpec& problem, const SolverConfig& config);

/// Solves A u = rhs for an already folded right-hand side.
Field3D solve_folded(const Field3D& rhs, SchemeKind scheme, const CoefficientProfile& profile,
                     const Grid3D& grid, const SolverConfig& config, PhaseTimes* times = nullptr);

}  // namespace compact3d
