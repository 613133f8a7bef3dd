#include "surprise/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace surprise {

int default_worker_count() {
    if (const char* env = std::getenv("SURPRISE_SIM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return int(std::min<long>(v, 512));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

void parallel_for(std::int64_t count, int workers,
                  const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (count <= 0) return;
    if (workers <= 0) workers = default_worker_count();
    const int used = int(std::min<std::int64_t>(workers, count));
    if (used == 1) {
        fn(0, count);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run_chunk = [&](std::int64_t begin, std::int64_t end) {
        try {
            fn(begin, end);
        } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(size_t(used) - 1);
    const std::int64_t chunk = (count + used - 1) / used;
    for (int w = 1; w < used; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min<std::int64_t>(begin + chunk, count);
        if (begin >= end) break;
        pool.emplace_back(run_chunk, begin, end);
    }
    run_chunk(0, std::min<std::int64_t>(chunk, count));
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace surprise
