#include "compact3d/partition.hpp"

#include <stdexcept>
#include <string>

namespace compact3d {

std::vector<Range> plan_partition(int extent, int parts) {
    if (parts < 1 || parts > extent) {
        throw std::invalid_argument("invalid partition: " + std::to_string(parts) +
                                    " parts for extent " + std::to_string(extent));
    }
    return split_even(0, extent, parts);
}

PartitionPlan make_partition_plan(int n_y, int n_z, int parts) {
    PartitionPlan plan;
    plan.z = plan_partition(n_z, parts);
    // More parts than y-rows leaves trailing parts without tridiagonal work.
    plan.y = split_even(0, n_y, parts);
    return plan;
}

Block ExchangePlan::forward_block_shape(int p, int q) const {
    Block b;
    b.from = p;
    b.to = q;
    b.stage = ExchangeStage::Forward;
    b.extent_x = n_x;
    b.extent_y = partition.y[q].size();
    b.extent_z = partition.z[p].size();
    return b;
}

std::size_t ExchangePlan::z_slab_size(int p) const {
    return static_cast<std::size_t>(n_x) * n_y * partition.z[p].size();
}

std::size_t ExchangePlan::y_slab_size(int p) const {
    return static_cast<std::size_t>(n_z) * n_x * partition.y[p].size();
}

ExchangePlan make_exchange_plan(int n_x, int n_y, int n_z, int parts) {
    ExchangePlan plan;
    plan.n_x = n_x;
    plan.n_y = n_y;
    plan.n_z = n_z;
    plan.partition = make_partition_plan(n_y, n_z, parts);
    return plan;
}

namespace {

void check_part(const ExchangePlan& plan, const Transport& transport, int part) {
    if (part < 0 || part >= plan.parts()) {
        throw std::out_of_range("exchange: part index out of range");
    }
    if (transport.part_count() != plan.parts()) {
        throw std::invalid_argument("exchange: transport and plan disagree on part count");
    }
}

void send_block(Transport& transport, Block block) {
    const int from = block.from, to = block.to;
    try {
        transport.send(std::move(block));
    } catch (const ExchangeError&) {
        throw;
    } catch (const std::exception& e) {
        throw ExchangeError(from, to, "send " + std::to_string(from) + "->" + std::to_string(to) +
                                          " failed: " + e.what());
    }
}

Block receive_block(Transport& transport, int from, int to, ExchangeStage stage, int ex, int ey,
                    int ez) {
    Block b;
    try {
        b = transport.receive(from, to);
    } catch (const ExchangeError&) {
        throw;
    } catch (const std::exception& e) {
        throw ExchangeError(from, to, "receive " + std::to_string(from) + "->" +
                                          std::to_string(to) + " failed: " + e.what());
    }
    if (b.from != from || b.to != to || b.stage != stage || b.extent_x != ex ||
        b.extent_y != ey || b.extent_z != ez || b.values.size() != b.volume()) {
        throw ExchangeError(from, to, "unexpected block on edge " + std::to_string(from) + "->" +
                                          std::to_string(to));
    }
    return b;
}

}  // namespace

std::vector<Complex> exchange_forward(const ExchangePlan& plan, Transport& transport, int part,
                                      std::span<const Complex> z_slab) {
    check_part(plan, transport, part);
    if (z_slab.size() != plan.z_slab_size(part)) {
        throw std::invalid_argument("exchange_forward: z-slab size does not match the plan");
    }
    const int nx = plan.n_x, ny = plan.n_y, nz = plan.n_z;
    const Range zr = plan.partition.z[part];
    const Range yr = plan.partition.y[part];
    const std::size_t nxs = static_cast<std::size_t>(nx);

    Block own;
    for (int q = 0; q < plan.parts(); ++q) {
        Block b = plan.forward_block_shape(part, q);
        const Range qy = plan.partition.y[q];
        b.values.resize(b.volume());
        std::size_t k = 0;
        for (int lz = 0; lz < zr.size(); ++lz) {
            for (int j = qy.begin; j < qy.end; ++j) {
                const Complex* src = z_slab.data() + nxs * (j + static_cast<std::size_t>(ny) * lz);
                for (int i = 0; i < nx; ++i) b.values[k++] = src[i];
            }
        }
        if (q == part) {
            own = std::move(b);
        } else {
            send_block(transport, std::move(b));
        }
    }

    std::vector<Complex> y_slab(plan.y_slab_size(part));
    for (int q = 0; q < plan.parts(); ++q) {
        const Range qz = plan.partition.z[q];
        Block b = q == part ? std::move(own)
                            : receive_block(transport, q, part, ExchangeStage::Forward, nx,
                                            yr.size(), qz.size());
        std::size_t k = 0;
        for (int lz = 0; lz < qz.size(); ++lz) {
            const std::size_t l = static_cast<std::size_t>(qz.begin + lz);
            for (int jj = 0; jj < yr.size(); ++jj) {
                for (int i = 0; i < nx; ++i) {
                    y_slab[l + nz * (i + nxs * jj)] = b.values[k++];
                }
            }
        }
    }
    return y_slab;
}

std::vector<Complex> exchange_inverse(const ExchangePlan& plan, Transport& transport, int part,
                                      std::span<const Complex> y_slab) {
    check_part(plan, transport, part);
    if (y_slab.size() != plan.y_slab_size(part)) {
        throw std::invalid_argument("exchange_inverse: y-slab size does not match the plan");
    }
    const int nx = plan.n_x, ny = plan.n_y, nz = plan.n_z;
    const Range zr = plan.partition.z[part];
    const Range yr = plan.partition.y[part];
    const std::size_t nxs = static_cast<std::size_t>(nx);

    Block own;
    for (int q = 0; q < plan.parts(); ++q) {
        const Range qz = plan.partition.z[q];
        Block b;
        b.from = part;
        b.to = q;
        b.stage = ExchangeStage::Inverse;
        b.extent_x = nx;
        b.extent_y = yr.size();
        b.extent_z = qz.size();
        b.values.resize(b.volume());
        std::size_t k = 0;
        for (int lz = 0; lz < qz.size(); ++lz) {
            const std::size_t l = static_cast<std::size_t>(qz.begin + lz);
            for (int jj = 0; jj < yr.size(); ++jj) {
                for (int i = 0; i < nx; ++i) b.values[k++] = y_slab[l + nz * (i + nxs * jj)];
            }
        }
        if (q == part) {
            own = std::move(b);
        } else {
            send_block(transport, std::move(b));
        }
    }

    std::vector<Complex> z_slab(plan.z_slab_size(part));
    for (int q = 0; q < plan.parts(); ++q) {
        const Range qy = plan.partition.y[q];
        Block b = q == part ? std::move(own)
                            : receive_block(transport, q, part, ExchangeStage::Inverse, nx,
                                            qy.size(), zr.size());
        std::size_t k = 0;
        for (int lz = 0; lz < zr.size(); ++lz) {
            for (int j = qy.begin; j < qy.end; ++j) {
                Complex* dst = z_slab.data() + nxs * (j + static_cast<std::size_t>(ny) * lz);
                for (int i = 0; i < nx; ++i) dst[i] = b.values[k++];
            }
        }
    }
    return z_slab;
}

}  // namespace compact3d
