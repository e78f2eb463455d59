#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace polarwalk {

// Worker count: POLARWALK_THREADS when set, otherwise hardware concurrency.
int worker_count();

// Runs fn(chunk_index, begin, end) over [0, count) split into fixed-size
// chunks of `grain` items. Chunking depends only on (count, grain), never on
// the worker count, so callers that combine per-chunk results in chunk order
// get bit-identical output regardless of scheduling.
void parallel_chunks(std::int64_t count, std::int64_t grain,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn);

// Integer tallies commute exactly, so chunks may merge into the shared
// accumulator in any order without losing determinism. Live memory stays at
// one local tally per worker.
std::vector<std::int64_t> parallel_tally(
    std::int64_t count, std::int64_t grain, std::size_t size,
    const std::function<void(std::int64_t, std::int64_t, std::vector<std::int64_t>&)>& fill);

// Convenience: per-chunk accumulator slots combined in chunk order.
template <typename T, typename Fn, typename Combine>
T parallel_reduce(std::int64_t count, std::int64_t grain, T init, Fn per_chunk, Combine combine) {
    if (count <= 0) return init;
    const int chunks = static_cast<int>((count + grain - 1) / grain);
    std::vector<T> slots(static_cast<std::size_t>(chunks), init);
    parallel_chunks(count, grain, [&](int chunk, std::int64_t begin, std::int64_t end) {
        slots[static_cast<std::size_t>(chunk)] = per_chunk(begin, end);
    });
    T acc = init;
    for (const T& slot : slots) acc = combine(acc, slot);
    return acc;
}

}  // namespace polarwalk
