#pragma once

#include <span>
#include <vector>

#include "compact3d/transport.hpp"
#include "compact3d/workers.hpp"

namespace compact3d {

/// Splits 1..extent into `parts` contiguous ranges (returned 0-based,
/// half-open) with sizes floor(extent/parts) or one more, larger sizes on
/// lower parts. Throws std::invalid_argument unless 1 <= parts <= extent.
std::vector<Range> plan_partition(int extent, int parts);

/// Per-part z-slab (transform stages) and y-slab (tridiagonal stage).
struct PartitionPlan {
    std::vector<Range> z;
    std::vector<Range> y;

    int parts() const noexcept { return static_cast<int>(z.size()); }
};

PartitionPlan make_partition_plan(int n_y, int n_z, int parts);

/// Block geometry of the z-slab <-> y-slab redistribution. Part p owns
/// z-slab n_x x n_y x kpz(p) in x-fastest layout and y-slab
/// n_z x n_x x kpy(p) in z-fastest ("pencil") layout.
struct ExchangePlan {
    int n_x = 0, n_y = 0, n_z = 0;
    PartitionPlan partition;

    int parts() const noexcept { return partition.parts(); }
    /// Extents (x, y, z) of the block p sends to q in the forward exchange.
    Block forward_block_shape(int p, int q) const;
    std::size_t z_slab_size(int p) const;
    std::size_t y_slab_size(int p) const;
};

ExchangePlan make_exchange_plan(int n_x, int n_y, int n_z, int parts);

/// Sends p's transformed z-slab to all parts (ascending destination order)
/// and assembles p's y-slab in pencil layout. Transport failures surface
/// as ExchangeError naming the offending edge.
std::vector<Complex> exchange_forward(const ExchangePlan& plan, Transport& transport, int part,
                                      std::span<const Complex> z_slab);

/// Reverse of exchange_forward: y-slab (pencil layout) back to z-slab.
std::vector<Complex> exchange_inverse(const ExchangePlan& plan, Transport& transport, int part,
                                      std::span<const Complex> y_slab);

}  // namespace compact3d
