#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace mislab {

// MIS_LAB_THREADS caps worker count; results are combined in chunk order so
// output is independent of scheduling.
inline unsigned thread_budget() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MIS_LAB_THREADS")) {
        long v = std::atol(env);
        if (v >= 1 && static_cast<unsigned>(v) < hw) return static_cast<unsigned>(v);
    }
    return hw;
}

// Maps [begin, end) over `work` in fixed chunks; `combine(chunk_index, value)`
// is invoked sequentially in chunk order on the caller thread.
template <typename T>
void parallel_chunks(std::uint64_t begin, std::uint64_t end,
                     const std::function<T(std::uint64_t, std::uint64_t)>& work,
                     const std::function<void(std::size_t, T&)>& combine) {
    unsigned nt = thread_budget();
    std::uint64_t span = end - begin;
    if (span == 0) return;
    if (nt <= 1 || span < 1024) {
        T v = work(begin, end);
        combine(0, v);
        return;
    }
    std::uint64_t chunk = (span + nt - 1) / nt;
    std::vector<T> results(nt);
    std::vector<std::thread> threads;
    threads.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        std::uint64_t lo = begin + chunk * t;
        std::uint64_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, t, lo, hi] { results[t] = work(lo, hi); });
    }
    std::size_t used = threads.size();
    for (auto& th : threads) th.join();
    for (std::size_t t = 0; t < used; ++t) combine(t, results[t]);
}

} // namespace mislab
