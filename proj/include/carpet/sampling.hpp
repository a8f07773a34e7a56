#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "carpet/cell.hpp"
#include "carpet/point.hpp"

namespace carpet {

/// Generator for sample `index` of a run seeded with `seed`. Each index gets
/// its own stream, so results do not depend on thread count or order.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [0, n).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// Uniformly random carpet cell of the given level.
CellId random_cell(std::mt19937_64& rng, int level);

/// Corner or edge midpoint of a random cell of level 1..max_level. Such
/// points lie in the carpet at every resolution.
TriadicPoint random_carpet_point(std::mt19937_64& rng, int max_level);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any call is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex mutex;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mutex);
        if (next >= n || failure) return;
        i = next++;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace carpet
