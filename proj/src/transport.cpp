#include "compact3d/transport.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <string>
#include <thread>

namespace compact3d {

InProcessTransport::InProcessTransport(int parts) : parts_(parts) {
    if (parts < 1) throw std::invalid_argument("transport needs at least one part");
    boxes_.reserve(static_cast<std::size_t>(parts) * parts);
    for (int k = 0; k < parts * parts; ++k) boxes_.push_back(std::make_unique<Mailbox>());
}

void InProcessTransport::check_pair(int from, int to) const {
    if (from < 0 || from >= parts_ || to < 0 || to >= parts_) {
        throw ExchangeError(from, to,
                            "no such transport edge " + std::to_string(from) + "->" +
                                std::to_string(to));
    }
}

InProcessTransport::Mailbox& InProcessTransport::box(int from, int to) {
    check_pair(from, to);
    return *boxes_[static_cast<std::size_t>(from) * parts_ + to];
}

void InProcessTransport::send(Block block) {
    Mailbox& mb = box(block.from, block.to);
    {
        std::lock_guard lock(mb.mutex);
        mb.queue.push_back(std::move(block));
    }
    mb.ready.notify_one();
}

Block InProcessTransport::receive(int from, int to) {
    Mailbox& mb = box(from, to);
    std::unique_lock lock(mb.mutex);
    mb.ready.wait(lock, [&] { return !mb.queue.empty() || aborted_.load(); });
    if (mb.queue.empty()) {
        throw ExchangeError(from, to,
                            "transport aborted while waiting on edge " + std::to_string(from) +
                                "->" + std::to_string(to));
    }
    Block b = std::move(mb.queue.front());
    mb.queue.pop_front();
    return b;
}

void InProcessTransport::abort() {
    aborted_.store(true);
    for (auto& mb : boxes_) {
        // Taking the lock orders the flag store before any waiter's re-check.
        { std::lock_guard lock(mb->mutex); }
        mb->ready.notify_all();
    }
}

// ---------------------------------------------------------------------------
// Frame codec

namespace {

void put_u32(std::vector<std::byte>& out, std::uint32_t v) {
    for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::byte>((v >> (8 * k)) & 0xffu));
}

void put_u64(std::vector<std::byte>& out, std::uint64_t v) {
    for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::byte>((v >> (8 * k)) & 0xffu));
}

std::uint64_t get_le(std::span<const std::byte> in, std::size_t at, int bytes) {
    std::uint64_t v = 0;
    for (int k = 0; k < bytes; ++k) {
        v |= static_cast<std::uint64_t>(std::to_integer<unsigned>(in[at + k])) << (8 * k);
    }
    return v;
}

}  // namespace

std::vector<std::byte> encode_frame(const Block& block) {
    if (block.values.size() != block.volume()) {
        throw std::invalid_argument("encode_frame: value count does not match block extents");
    }
    const std::uint64_t body = 6 * 4 + 16 * static_cast<std::uint64_t>(block.values.size());
    std::vector<std::byte> out;
    out.reserve(8 + body);
    put_u64(out, body);
    put_u32(out, static_cast<std::uint32_t>(block.from));
    put_u32(out, static_cast<std::uint32_t>(block.to));
    put_u32(out, static_cast<std::uint32_t>(block.stage));
    put_u32(out, static_cast<std::uint32_t>(block.extent_x));
    put_u32(out, static_cast<std::uint32_t>(block.extent_y));
    put_u32(out, static_cast<std::uint32_t>(block.extent_z));
    for (const Complex& v : block.values) {
        put_u64(out, std::bit_cast<std::uint64_t>(v.real()));
        put_u64(out, std::bit_cast<std::uint64_t>(v.imag()));
    }
    return out;
}

Block decode_frame(std::span<const std::byte> frame) {
    if (frame.size() < frame_header_bytes) {
        throw std::invalid_argument("decode_frame: truncated header");
    }
    const std::uint64_t body = get_le(frame, 0, 8);
    if (body + 8 != frame.size()) {
        throw std::invalid_argument("decode_frame: length prefix does not match frame size");
    }
    Block b;
    b.from = static_cast<int>(get_le(frame, 8, 4));
    b.to = static_cast<int>(get_le(frame, 12, 4));
    const auto stage = static_cast<std::uint32_t>(get_le(frame, 16, 4));
    if (stage != 1 && stage != 2) throw std::invalid_argument("decode_frame: unknown stage tag");
    b.stage = static_cast<ExchangeStage>(stage);
    b.extent_x = static_cast<int>(get_le(frame, 20, 4));
    b.extent_y = static_cast<int>(get_le(frame, 24, 4));
    b.extent_z = static_cast<int>(get_le(frame, 28, 4));
    const std::size_t count = b.volume();
    if (frame.size() != frame_header_bytes + 16 * count) {
        throw std::invalid_argument("decode_frame: payload size does not match block extents");
    }
    b.values.resize(count);
    std::size_t at = frame_header_bytes;
    for (std::size_t k = 0; k < count; ++k, at += 16) {
        const double re = std::bit_cast<double>(get_le(frame, at, 8));
        const double im = std::bit_cast<double>(get_le(frame, at + 8, 8));
        b.values[k] = Complex(re, im);
    }
    return b;
}

// ---------------------------------------------------------------------------
// Socket transport

struct SocketTransport::Channel {
    int from = 0;
    int to = 0;
    int write_fd = -1;
    int read_fd = -1;
    std::mutex mutex;
    std::condition_variable pending;
    std::deque<std::vector<std::byte>> outbox;
    bool closing = false;
    std::string error;
    std::jthread writer;

    ~Channel() {
        {
            std::lock_guard lock(mutex);
            closing = true;
        }
        pending.notify_all();
        // Unblocks a writer stuck on a full stream nobody will drain.
        if (read_fd >= 0) ::shutdown(read_fd, SHUT_RDWR);
        if (writer.joinable()) writer.join();
        if (write_fd >= 0) ::close(write_fd);
        if (read_fd >= 0) ::close(read_fd);
    }

    void write_loop() {
        for (;;) {
            std::vector<std::byte> frame;
            {
                std::unique_lock lock(mutex);
                pending.wait(lock, [&] { return closing || !outbox.empty(); });
                if (outbox.empty()) return;
                frame = std::move(outbox.front());
                outbox.pop_front();
            }
            std::size_t done = 0;
            while (done < frame.size()) {
                const ssize_t n =
                    ::send(write_fd, frame.data() + done, frame.size() - done, MSG_NOSIGNAL);
                if (n < 0 && errno == EINTR) continue;
                if (n <= 0) {
                    std::lock_guard lock(mutex);
                    error = std::strerror(errno);
                    return;
                }
                done += static_cast<std::size_t>(n);
            }
        }
    }

    void read_exact(std::byte* dst, std::size_t count) {
        std::size_t done = 0;
        while (done < count) {
            const ssize_t n = ::read(read_fd, dst + done, count - done);
            if (n < 0 && errno == EINTR) continue;
            if (n <= 0) {
                throw ExchangeError(from, to,
                                    "socket read failed on edge " + std::to_string(from) + "->" +
                                        std::to_string(to) +
                                        (n == 0 ? ": connection closed" : ": " + std::string(std::strerror(errno))));
            }
            done += static_cast<std::size_t>(n);
        }
    }
};

SocketTransport::SocketTransport(int parts) : parts_(parts) {
    if (parts < 1) throw std::invalid_argument("transport needs at least one part");
    channels_.resize(static_cast<std::size_t>(parts) * parts);
    for (int p = 0; p < parts; ++p) {
        for (int q = 0; q < parts; ++q) {
            auto ch = std::make_unique<Channel>();
            ch->from = p;
            ch->to = q;
            int fds[2];
            if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
                throw ExchangeError(p, q, std::string("socketpair failed: ") + std::strerror(errno));
            }
            ch->write_fd = fds[0];
            ch->read_fd = fds[1];
            Channel* raw = ch.get();
            ch->writer = std::jthread([raw] { raw->write_loop(); });
            channels_[static_cast<std::size_t>(p) * parts + q] = std::move(ch);
        }
    }
}

SocketTransport::~SocketTransport() = default;

void SocketTransport::abort() {
    for (auto& ch : channels_) ::shutdown(ch->read_fd, SHUT_RDWR);
}

SocketTransport::Channel& SocketTransport::channel(int from, int to) {
    if (from < 0 || from >= parts_ || to < 0 || to >= parts_) {
        throw ExchangeError(from, to,
                            "no such transport edge " + std::to_string(from) + "->" +
                                std::to_string(to));
    }
    return *channels_[static_cast<std::size_t>(from) * parts_ + to];
}

void SocketTransport::send(Block block) {
    Channel& ch = channel(block.from, block.to);
    auto frame = encode_frame(block);
    {
        std::lock_guard lock(ch.mutex);
        if (!ch.error.empty()) {
            throw ExchangeError(block.from, block.to, "socket write failed: " + ch.error);
        }
        ch.outbox.push_back(std::move(frame));
    }
    ch.pending.notify_one();
}

Block SocketTransport::receive(int from, int to) {
    Channel& ch = channel(from, to);
    std::vector<std::byte> frame(8);
    ch.read_exact(frame.data(), 8);
    std::uint64_t body = 0;
    for (int k = 0; k < 8; ++k) body |= static_cast<std::uint64_t>(std::to_integer<unsigned>(frame[k])) << (8 * k);
    frame.resize(8 + body);
    ch.read_exact(frame.data() + 8, body);
    try {
        return decode_frame(frame);
    } catch (const std::invalid_argument& e) {
        throw ExchangeError(from, to, std::string("malformed frame: ") + e.what());
    }
}

}  // namespace compact3d
