#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace gmt::parallel {

/// Worker count used by the parallel helpers (0 = hardware concurrency).
void set_threads(unsigned n);
unsigned threads();

/// Runs job(i) for i in [0, n) across the worker pool. Jobs must write to
/// disjoint state.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& job);

/// Fixed chunk width for reductions. Chunk boundaries depend only on the
/// item count, never on the worker count.
inline constexpr std::size_t kChunk = 2048;

/// Deterministic reduction: `partial(begin, end)` is evaluated per fixed
/// chunk and the partials are combined by a pairwise tree in index order.
template <class T, class Partial, class Combine = std::plus<T>>
T reduce(std::size_t n, T identity, Partial&& partial, Combine combine = {}) {
  if (n == 0) return identity;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<T> parts(chunks, identity);
  for_each_index(chunks, [&](std::size_t c) {
    const std::size_t b = c * kChunk;
    parts[c] = partial(b, std::min(n, b + kChunk));
  });
  for (std::size_t width = 1; width < chunks; width *= 2)
    for (std::size_t i = 0; i + width < chunks; i += 2 * width) parts[i] = combine(parts[i], parts[i + width]);
  return parts[0];
}

}  // namespace gmt::parallel
