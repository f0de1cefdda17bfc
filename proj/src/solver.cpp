#include "compact3d/solver.hpp"

#include <atomic>
#include <barrier>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <string>

#include "compact3d/partition.hpp"
#include "compact3d/spectral.hpp"
#include "compact3d/tridiag.hpp"
#include "compact3d/workers.hpp"

namespace compact3d {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Writes the folded right-hand side of 0-based planes [l_begin, l_end).
using RhsFiller = std::function<void(int l_begin, int l_end, std::span<Complex> out)>;

RhsFiller problem_filler(const ProblemSpec& problem,
                         const std::vector<StencilCoefficients>& table) {
    return [&problem, &table](int l_begin, int l_end, std::span<Complex> out) {
        build_rhs_planes(problem.scheme, problem.source, problem.profile, problem.grid, l_begin,
                         l_end, out);
        fold_dirichlet_planes(problem.boundary, table, problem.grid, l_begin, l_end, out);
    };
}

RhsFiller copy_filler(const Field3D& rhs) {
    return [&rhs](int l_begin, int l_end, std::span<Complex> out) {
        const std::size_t plane = rhs.plane_size();
        auto src = rhs.values().subspan(plane * l_begin, plane * (l_end - l_begin));
        std::copy(src.begin(), src.end(), out.begin());
    };
}

/// Forward or inverse DST of a stack of `planes` planes stored contiguously.
void transform_slab(const TransformPlan& plan, std::span<Complex> slab, int planes, int workers,
                    TransformParallelism mode) {
    if (planes == 0) return;
    if (mode == TransformParallelism::PerPlane) {
        const auto ranges = split_even(0, planes, workers);
        const std::size_t plane_size = static_cast<std::size_t>(plan.n_x()) * plan.n_y();
        run_workers(workers, [&](int w) {
            for (int l = ranges[w].begin; l < ranges[w].end; ++l) {
                plan.plane(slab.subspan(plane_size * l, plane_size));
            }
        });
        return;
    }
    const auto x_ranges = split_even(0, plan.n_y() * planes, workers);
    run_workers(workers, [&](int w) {
        transform_x_lines(plan, slab, x_ranges[w].begin, x_ranges[w].end);
    });
    const auto y_ranges = split_even(0, plan.n_x() * planes, workers);
    run_workers(workers, [&](int w) {
        transform_y_lines(plan, slab, y_ranges[w].begin, y_ranges[w].end);
    });
}

/// Solves local z-lines of a pencil buffer; local line k is mode
/// (k % n_x, m_offset + k / n_x).
void solve_pencils(const LineSolver& solver, std::span<Complex> pencils, int n_x, int lines,
                   int m_offset, int workers) {
    const int nz = solver.n_z();
    const auto ranges = split_even(0, lines, workers);
    run_workers(workers, [&](int w) {
        std::vector<Complex> scratch(nz);
        for (int k = ranges[w].begin; k < ranges[w].end; ++k) {
            solver.solve(k % n_x, m_offset + k / n_x,
                         pencils.subspan(static_cast<std::size_t>(k) * nz, nz), scratch);
        }
    });
}

/// x-fastest field <-> z-fastest pencils, split over y-rows.
void to_pencils(std::span<const Complex> field, std::span<Complex> pencils, int nx, int ny,
                int nz, int workers) {
    const auto ranges = split_even(0, ny, workers);
    run_workers(workers, [&](int w) {
        for (int j = ranges[w].begin; j < ranges[w].end; ++j) {
            for (int i = 0; i < nx; ++i) {
                Complex* dst = pencils.data() + static_cast<std::size_t>(nz) * (i + static_cast<std::size_t>(nx) * j);
                const Complex* src = field.data() + i + static_cast<std::size_t>(nx) * j;
                const std::size_t plane = static_cast<std::size_t>(nx) * ny;
                for (int l = 0; l < nz; ++l) dst[l] = src[plane * l];
            }
        }
    });
}

void from_pencils(std::span<const Complex> pencils, std::span<Complex> field, int nx, int ny,
                  int nz, int workers) {
    const auto ranges = split_even(0, ny, workers);
    run_workers(workers, [&](int w) {
        for (int j = ranges[w].begin; j < ranges[w].end; ++j) {
            for (int i = 0; i < nx; ++i) {
                const Complex* src = pencils.data() + static_cast<std::size_t>(nz) * (i + static_cast<std::size_t>(nx) * j);
                Complex* dst = field.data() + i + static_cast<std::size_t>(nx) * j;
                const std::size_t plane = static_cast<std::size_t>(nx) * ny;
                for (int l = 0; l < nz; ++l) dst[plane * l] = src[l];
            }
        }
    });
}

Field3D solve_shared(const RhsFiller& fill, const std::vector<StencilCoefficients>& table,
                     const Grid3D& grid, const SolverConfig& config, PhaseTimes& times,
                     Field3D* keep_rhs) {
    const int workers = config.mode == ExecutionMode::Sequential ? 1 : config.workers;
    const int nx = grid.n_x, ny = grid.n_y, nz = grid.n_z;
    const auto t_start = Clock::now();

    auto t0 = Clock::now();
    Field3D field(nx, ny, nz);
    {
        const auto ranges = split_even(0, nz, workers);
        const std::size_t plane = grid.plane_size();
        run_workers(workers, [&](int w) {
            const Range r = ranges[w];
            if (r.empty()) return;
            fill(r.begin, r.end, field.values().subspan(plane * r.begin, plane * r.size()));
        });
    }
    if (keep_rhs != nullptr) *keep_rhs = field;
    const TransformPlan plan(nx, ny);
    const LineSolver solver(table, grid);
    times.setup = seconds_since(t0);

    t0 = Clock::now();
    transform_slab(plan, field.values(), nz, workers, config.transform);
    times.transform = seconds_since(t0);

    t0 = Clock::now();
    std::vector<Complex> pencils(field.size());
    to_pencils(field.values(), pencils, nx, ny, nz, workers);
    times.exchange = seconds_since(t0);

    t0 = Clock::now();
    solve_pencils(solver, pencils, nx, nx * ny, 0, workers);
    times.tridiag = seconds_since(t0);

    t0 = Clock::now();
    from_pencils(pencils, field.values(), nx, ny, nz, workers);
    pencils = {};
    times.exchange += seconds_since(t0);

    t0 = Clock::now();
    transform_slab(plan, field.values(), nz, workers, config.transform);
    times.transform += seconds_since(t0);

    times.total = seconds_since(t_start);
    return field;
}

std::unique_ptr<Transport> make_transport(TransportKind kind, int parts) {
    if (kind == TransportKind::Socket) return std::make_unique<SocketTransport>(parts);
    return std::make_unique<InProcessTransport>(parts);
}

Field3D solve_partitioned(const RhsFiller& fill, const std::vector<StencilCoefficients>& table,
                          const Grid3D& grid, const SolverConfig& config, PhaseTimes& times,
                          Field3D* keep_rhs) {
    const int parts = config.parts;
    const int workers = config.workers;
    const int nx = grid.n_x, ny = grid.n_y, nz = grid.n_z;
    const auto t_start = Clock::now();

    const ExchangePlan xplan = make_exchange_plan(nx, ny, nz, parts);
    auto transport = make_transport(config.transport, parts);
    Field3D out(nx, ny, nz);
    if (keep_rhs != nullptr) *keep_rhs = Field3D(nx, ny, nz);

    std::vector<PhaseTimes> part_times(parts);
    std::barrier sync(parts);
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    run_workers(parts, [&](int p) {
        PhaseTimes& pt = part_times[p];
        // Every part reaches every barrier; after a failure the rest skip work.
        auto stage = [&](double& slot, auto&& body) {
            if (!failed.load()) {
                const auto t0 = Clock::now();
                try {
                    body();
                } catch (...) {
                    {
                        std::lock_guard lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                    }
                    failed.store(true);
                    transport->abort();
                }
                slot += seconds_since(t0);
            }
            sync.arrive_and_wait();
        };

        const Range zr = xplan.partition.z[p];
        const Range yr = xplan.partition.y[p];
        const std::size_t plane = grid.plane_size();
        std::vector<Complex> z_slab;
        std::vector<Complex> y_slab;
        std::unique_ptr<TransformPlan> plan;
        std::unique_ptr<LineSolver> solver;

        stage(pt.setup, [&] {
            z_slab.resize(xplan.z_slab_size(p));
            const auto ranges = split_even(zr.begin, zr.end, workers);
            run_workers(workers, [&](int w) {
                const Range r = ranges[w];
                if (r.empty()) return;
                fill(r.begin, r.end,
                     std::span<Complex>(z_slab).subspan(plane * (r.begin - zr.begin), plane * r.size()));
            });
            if (keep_rhs != nullptr) {
                std::copy(z_slab.begin(), z_slab.end(), keep_rhs->values().begin() + plane * zr.begin);
            }
            plan = std::make_unique<TransformPlan>(nx, ny);
            solver = std::make_unique<LineSolver>(table, grid);
        });
        stage(pt.transform, [&] { transform_slab(*plan, z_slab, zr.size(), workers, config.transform); });
        stage(pt.exchange, [&] {
            y_slab = exchange_forward(xplan, *transport, p, z_slab);
            z_slab = {};
        });
        stage(pt.tridiag, [&] { solve_pencils(*solver, y_slab, nx, nx * yr.size(), yr.begin, workers); });
        stage(pt.exchange, [&] {
            z_slab = exchange_inverse(xplan, *transport, p, y_slab);
            y_slab = {};
        });
        stage(pt.transform, [&] { transform_slab(*plan, z_slab, zr.size(), workers, config.transform); });
        stage(pt.total, [&] {
            std::copy(z_slab.begin(), z_slab.end(), out.values().begin() + plane * zr.begin);
        });
    });
    if (first_error) std::rethrow_exception(first_error);

    for (const PhaseTimes& pt : part_times) {
        times.setup = std::max(times.setup, pt.setup);
        times.transform = std::max(times.transform, pt.transform);
        times.exchange = std::max(times.exchange, pt.exchange);
        times.tridiag = std::max(times.tridiag, pt.tridiag);
    }
    times.total = seconds_since(t_start);
    return out;
}

Field3D run(const RhsFiller& fill, const std::vector<StencilCoefficients>& table,
            const Grid3D& grid, const SolverConfig& config, PhaseTimes& times, Field3D* keep_rhs) {
    validate_config(config, grid);
    if (config.mode == ExecutionMode::Partitioned) {
        return solve_partitioned(fill, table, grid, config, times, keep_rhs);
    }
    return solve_shared(fill, table, grid, config, times, keep_rhs);
}

}  // namespace

std::string describe(const SolverConfig& config) {
    const std::string t = config.transform == TransformParallelism::PerPlane ? "plane" : "line";
    switch (config.mode) {
        case ExecutionMode::Sequential: return "seq";
        case ExecutionMode::SharedWorkers:
            return "shared(w=" + std::to_string(config.workers) + "," + t + ")";
        case ExecutionMode::Partitioned:
            return "partitioned(p=" + std::to_string(config.parts) +
                   ",w=" + std::to_string(config.workers) + "," + t +
                   (config.transport == TransportKind::Socket ? ",socket" : "") + ")";
    }
    return "?";
}

void validate_config(const SolverConfig& config, const Grid3D& grid) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("solver config " + describe(config) + ": " + why);
    };
    if (config.workers < 1) fail("worker count must be positive");
    const bool per_line = config.transform == TransformParallelism::PerLineBatch;
    switch (config.mode) {
        case ExecutionMode::Sequential: return;
        case ExecutionMode::SharedWorkers:
            if (per_line) {
                if (config.workers > grid.n_x || config.workers > grid.n_y) {
                    fail("per-line transforms need n_x and n_y >= workers");
                }
            } else if (config.workers > grid.n_z) {
                fail("per-plane transforms need n_z >= workers");
            }
            return;
        case ExecutionMode::Partitioned:
            if (config.parts < 1) fail("part count must be positive");
            if (config.parts > grid.n_z) fail("part count exceeds n_z");
            if (per_line) {
                if (config.workers > grid.n_x || config.workers > grid.n_y) {
                    fail("per-line transforms need n_x and n_y >= workers per part");
                }
            } else if (config.workers > grid.n_z / config.parts) {
                fail("per-plane transforms need every part to own at least one plane per worker");
            }
            return;
    }
}

Field3D solve_folded(const Field3D& rhs, SchemeKind scheme, const CoefficientProfile& profile,
                     const Grid3D& grid, const SolverConfig& config, PhaseTimes* times) {
    if (rhs.n_x() != grid.n_x || rhs.n_y() != grid.n_y || rhs.n_z() != grid.n_z) {
        throw std::invalid_argument("solve_folded: rhs extents do not match the grid");
    }
    const auto table = coefficient_table(scheme, profile, grid);
    PhaseTimes local;
    Field3D u = run(copy_filler(rhs), table, grid, config, local, nullptr);
    if (times != nullptr) *times = local;
    return u;
}

SolveReport solve_direct_report(const ProblemSpec& problem, const SolverConfig& config) {
    const auto t0 = Clock::now();
    const auto table = coefficient_table(problem.scheme, problem.profile, problem.grid);
    const double table_time = seconds_since(t0);
    SolveReport report;
    report.solution = run(problem_filler(problem, table), table, problem.grid, config,
                          report.times, &report.rhs);
    report.times.setup += table_time;
    report.times.total += table_time;
    return report;
}

Field3D solve_direct(const ProblemSpec& problem, const SolverConfig& config) {
    const auto table = coefficient_table(problem.scheme, problem.profile, problem.grid);
    PhaseTimes times;
    return run(problem_filler(problem, table), table, problem.grid, config, times, nullptr);
}

}  // namespace compact3d
