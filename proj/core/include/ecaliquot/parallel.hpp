#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "ecaliquot/modular.hpp"

namespace ecaliquot {

struct Range {
    u64 lo = 0;
    u64 hi = 0;  // inclusive
    friend bool operator==(const Range&, const Range&) = default;
};

inline std::vector<Range> split_ranges(u64 lo, u64 hi, u64 range_size) {
    std::vector<Range> out;
    if (lo > hi) return out;
    range_size = std::max<u64>(range_size, 1);
    for (u64 start = lo;; start += range_size) {
        u64 end = (hi - start < range_size - 1) ? hi : start + range_size - 1;
        out.push_back({start, end});
        if (end == hi) break;
    }
    return out;
}

// Applies fn to every range on a pool of `workers` threads. Results are
// returned in the order of `ranges`, so the output never depends on
// scheduling. The first exception thrown by fn is rethrown.
template <typename Fn>
auto map_ranges(const std::vector<Range>& ranges, unsigned workers, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, const Range&>> {
    using Result = std::invoke_result_t<Fn&, const Range&>;
    std::vector<std::optional<Result>> slots(ranges.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ranges.size()) return;
            try {
                slots[i].emplace(fn(ranges[i]));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(ranges.size());
            }
        }
    };

    workers = std::max(1u, workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers && w < ranges.size(); ++w) pool.emplace_back(work);
        work();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<Result> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace ecaliquot
