#pragma once

#include <functional>
#include <vector>

namespace compact3d {

/// Half-open integer range.
struct Range {
    int begin = 0;
    int end = 0;
    int size() const noexcept { return end - begin; }
    bool empty() const noexcept { return end <= begin; }
};

/// Splits [begin, end) into `parts` consecutive ranges whose sizes differ by
/// at most one, larger ranges first. Parts beyond the extent come out empty.
std::vector<Range> split_even(int begin, int end, int parts);

/// Runs fn(0), ..., fn(count-1) on `count` threads (the caller's thread
/// takes worker 0) and joins them. The first exception thrown is rethrown.
void run_workers(int count, const std::function<void(int worker)>& fn);

}  // namespace compact3d
