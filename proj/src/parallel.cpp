#include "polarwalk/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace polarwalk {

int worker_count() {
    if (const char* raw = std::getenv("POLARWALK_THREADS")) {
        const int value = std::atoi(raw);
        if (value >= 1 && value <= 256) return value;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<std::int64_t> parallel_tally(
    std::int64_t count, std::int64_t grain, std::size_t size,
    const std::function<void(std::int64_t, std::int64_t, std::vector<std::int64_t>&)>& fill) {
    std::vector<std::int64_t> total(size, 0);
    std::mutex merge;
    parallel_chunks(count, grain, [&](int, std::int64_t begin, std::int64_t end) {
        std::vector<std::int64_t> local(size, 0);
        fill(begin, end, local);
        std::lock_guard<std::mutex> lock(merge);
        for (std::size_t j = 0; j < size; ++j) total[j] += local[j];
    });
    return total;
}

void parallel_chunks(std::int64_t count, std::int64_t grain,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
    if (count <= 0) return;
    if (grain <= 0) grain = 1;
    const std::int64_t chunks = (count + grain - 1) / grain;
    const int workers = static_cast<int>(std::min<std::int64_t>(worker_count(), chunks));
    if (workers <= 1) {
        for (std::int64_t chunk = 0; chunk < chunks; ++chunk)
            fn(static_cast<int>(chunk), chunk * grain, std::min(count, (chunk + 1) * grain));
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto body = [&] {
        for (;;) {
            const std::int64_t chunk = next.fetch_add(1);
            if (chunk >= chunks) return;
            fn(static_cast<int>(chunk), chunk * grain, std::min(count, (chunk + 1) * grain));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int i = 1; i < workers; ++i) pool.emplace_back(body);
    body();
    for (std::thread& t : pool) t.join();
}

}  // namespace polarwalk
