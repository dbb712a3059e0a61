#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace rsom::detail {

// Runs fn(i) for i in [0, count) across num_threads workers in fixed
// contiguous chunks. Callers must write to disjoint slots only, which keeps
// the result bit-identical to a sequential loop.
template <typename Fn>
void parallel_for(int count, int num_threads, Fn&& fn) {
    if (num_threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    num_threads = std::min(num_threads, count);
    std::vector<std::thread> workers;
    workers.reserve(num_threads);
    int chunk = (count + num_threads - 1) / num_threads;
    for (int w = 0; w < num_threads; ++w) {
        int begin = w * chunk;
        int end = std::min(count, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([begin, end, &fn]() {
            for (int i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

} // namespace rsom::detail
