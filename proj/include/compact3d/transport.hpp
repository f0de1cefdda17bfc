#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "compact3d/common.hpp"

namespace compact3d {

enum class ExchangeStage : std::uint32_t { Forward = 1, Inverse = 2 };

/// Unit of data moved between parts: an extent_x x extent_y x extent_z
/// brick of complex values, x fastest.
struct Block {
    int from = 0;
    int to = 0;
    ExchangeStage stage = ExchangeStage::Forward;
    int extent_x = 0, extent_y = 0, extent_z = 0;
    std::vector<Complex> values;

    std::size_t volume() const noexcept {
        return static_cast<std::size_t>(extent_x) * extent_y * extent_z;
    }
};

/// Point-to-point message passing between parts. Delivery is reliable and
/// ordered per (from, to) pair. send() does not wait for the receiver.
class Transport {
public:
    virtual ~Transport() = default;
    virtual int part_count() const = 0;
    virtual void send(Block block) = 0;
    /// Blocks until the next message from `from` to `to` arrives.
    virtual Block receive(int from, int to) = 0;
    /// Wakes every blocked and future receive() with an ExchangeError.
    virtual void abort() = 0;
};

/// Shared-memory mailboxes, one per ordered pair.
class InProcessTransport final : public Transport {
public:
    explicit InProcessTransport(int parts);

    int part_count() const override { return parts_; }
    void send(Block block) override;
    Block receive(int from, int to) override;
    void abort() override;

private:
    struct Mailbox {
        std::mutex mutex;
        std::condition_variable ready;
        std::deque<Block> queue;
    };
    Mailbox& box(int from, int to);
    void check_pair(int from, int to) const;

    int parts_;
    std::vector<std::unique_ptr<Mailbox>> boxes_;
    std::atomic<bool> aborted_{false};
};

// Wire format of one block:
//   u64  byte count of everything after this field
//   u32  from, to, stage, extent_x, extent_y, extent_z
//   f64  (re, im) pairs, extent_x * extent_y * extent_z of them, x fastest
// All integers and floats little-endian.
inline constexpr std::size_t frame_header_bytes = 8 + 6 * 4;

std::vector<std::byte> encode_frame(const Block& block);
/// Throws std::invalid_argument on a truncated or inconsistent frame.
Block decode_frame(std::span<const std::byte> frame);

/// Byte-stream transport over connected local socket pairs. Each ordered
/// pair has its own stream and writer thread.
class SocketTransport final : public Transport {
public:
    explicit SocketTransport(int parts);
    ~SocketTransport() override;
    SocketTransport(const SocketTransport&) = delete;
    SocketTransport& operator=(const SocketTransport&) = delete;

    int part_count() const override { return parts_; }
    void send(Block block) override;
    Block receive(int from, int to) override;
    void abort() override;

private:
    struct Channel;
    Channel& channel(int from, int to);

    int parts_;
    std::vector<std::unique_ptr<Channel>> channels_;
};

}  // namespace compact3d
