#pragma once

#include <cstdint>
#include <functional>

namespace s1lab {

// 0 restores the default (hardware concurrency).
void set_max_threads(int n);
int max_threads();

// Runs fn(begin, end) over consecutive chunks of [0, n). Chunk boundaries
// depend only on n and chunk, never on the worker count, so any computation
// that writes results keyed by index produces identical output for every
// thread setting.
void parallel_for_chunks(std::int64_t n, std::int64_t chunk,
                         const std::function<void(std::int64_t, std::int64_t)>& fn);

} // namespace s1lab
