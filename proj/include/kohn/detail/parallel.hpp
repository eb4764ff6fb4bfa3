#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace kohn::detail {

/// Applies f to every item on a small thread pool; results keep the input order.
/// The first exception thrown by any task is rethrown after all workers finish.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F f) -> std::vector<std::invoke_result_t<F&, const T&>> {
    using R = std::invoke_result_t<F&, const T&>;
    std::vector<R> out(items.size());
    const std::size_t workers =
        std::min<std::size_t>(items.size(), std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) out[i] = f(items[i]);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < items.size(); i = next++) {
            try {
                out[i] = f(items[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace kohn::detail
