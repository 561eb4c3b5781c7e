// parallel.hpp
// Block-parallel map with a fixed block layout. The layout depends only on
// the problem size, never on the worker count, so reductions performed in
// block order give identical bits for any number of workers.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bvw {

struct BlockRange {
  std::uint64_t begin;  // inclusive
  std::uint64_t end;    // exclusive
};

inline std::vector<BlockRange> split_range(std::uint64_t begin, std::uint64_t end,
                                           std::uint64_t block_length) {
  std::vector<BlockRange> blocks;
  if (block_length == 0) block_length = 1;
  for (std::uint64_t lo = begin; lo < end; lo += block_length) {
    blocks.push_back({lo, std::min(end, lo + block_length)});
  }
  return blocks;
}

inline unsigned effective_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count) on up to `workers` threads and returns the
// results in index order. Exceptions are rethrown on the calling thread.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned workers, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(count);
  workers = std::max(1u, std::min<unsigned>(effective_workers(workers),
                                            static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          try {
            results[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(count);
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace bvw
