#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace projposet {

struct SearchLimits {
    unsigned jobs = 1;
    /// 0 means unlimited.
    std::uint64_t node_budget = 0;
};

/// Node accounting shared by all workers of one search.
class SearchControl {
public:
    explicit SearchControl(std::uint64_t budget) : budget_(budget) { }

    /// Counts one node. False once the search has been stopped or the budget is spent.
    bool tick()
    {
        if (stopped_.load(std::memory_order_relaxed))
            return false;
        auto n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (budget_ != 0 && n > budget_) {
            exhausted_.store(true);
            stopped_.store(true);
            return false;
        }
        return true;
    }

    void stop() { stopped_.store(true); }
    bool stopped() const { return stopped_.load(); }
    bool exhausted() const { return exhausted_.load(); }
    std::uint64_t nodes() const { return nodes_.load(); }

private:
    std::uint64_t budget_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> stopped_{false};
    std::atomic<bool> exhausted_{false};
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads, handing out branches in
/// increasing order. The first exception thrown by any worker is rethrown here
/// after all workers have joined.
template <class Fn>
void run_branches(std::size_t count, unsigned jobs, Fn && fn)
{
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned n = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto & t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace projposet
