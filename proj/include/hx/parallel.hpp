#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace hx {

// Deterministic parallelism contract: work is split into contiguous index
// ranges, one worker per range, and every result lands in its own slot.
// Reductions then run in index order, so output never depends on the
// thread count.

inline int effective_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// fn(begin, end) over a partition of [0, count).
template <typename Fn>
void parallel_ranges(std::size_t count, int threads, Fn&& fn) {
  threads = effective_threads(threads);
  if (threads <= 1 || count <= 1) {
    if (count > 0) fn(std::size_t{0}, count);
    return;
  }
  std::size_t nchunks = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::vector<std::thread> workers;
  workers.reserve(nchunks);
  std::size_t chunk = count / nchunks, extra = count % nchunks, begin = 0;
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t end = begin + chunk + (c < extra ? 1 : 0);
    workers.emplace_back([&fn, begin, end] { fn(begin, end); });
    begin = end;
  }
  for (auto& w : workers) w.join();
}

// fn(i) -> T for each i in [0, count), results in index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, int threads, Fn&& fn) {
  std::vector<T> out(count);
  parallel_ranges(count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
  });
  return out;
}

}  // namespace hx
