#include "compact3d/workers.hpp"

#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace compact3d {

std::vector<Range> split_even(int begin, int end, int parts) {
    if (parts < 1) throw std::invalid_argument("split_even: parts must be positive");
    const int extent = std::max(0, end - begin);
    const int base = extent / parts;
    const int extra = extent % parts;
    std::vector<Range> out;
    out.reserve(parts);
    int at = begin;
    for (int p = 0; p < parts; ++p) {
        const int size = base + (p < extra ? 1 : 0);
        out.push_back({at, at + size});
        at += size;
    }
    return out;
}

void run_workers(int count, const std::function<void(int)>& fn) {
    if (count < 1) throw std::invalid_argument("run_workers: count must be positive");
    if (count == 1) {
        fn(0);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto guarded = [&](int w) {
        try {
            fn(w);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    {
        std::vector<std::jthread> threads;
        threads.reserve(count - 1);
        for (int w = 1; w < count; ++w) threads.emplace_back(guarded, w);
        guarded(0);
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace compact3d
