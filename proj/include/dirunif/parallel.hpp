// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dirunif {

/// Runs fn(i) for i = 0..count-1 across `workers` threads (0 = hardware
/// count). Work items must be independent; results keyed by index stay
/// identical for any worker count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, const Fn& fn) {
  if (workers == 0) workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto body = [&] {
    constexpr std::size_t kChunk = 16;
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= count || failed.load()) return;
      const std::size_t end = std::min(begin + kChunk, count);
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawned = static_cast<unsigned>(
      std::min<std::size_t>(workers, count));
  pool.reserve(spawned);
  for (unsigned t = 0; t < spawned; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace dirunif
