//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_PARALLEL_H_
#define CHEMDIV_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace chemdiv {

/// Worker count from CHEMDIV_WORKERS, else the hardware concurrency.
inline int default_workers() {
  if (const char *env = std::getenv("CHEMDIV_WORKERS")) {
    try {
      int v = std::stoi(env);
      if (v > 0)
        return v;
    } catch (const std::exception &) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Resolves a requested worker count; <= 0 means default_workers().
inline int resolve_workers(int requested) {
  return requested > 0 ? requested : default_workers();
}

/// Runs fn(i) for i in [0, n), handing out indices in chunks from a shared
/// counter. Results must be keyed by i for determinism. The first exception
/// thrown by any worker is rethrown after all workers join.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn &&fn,
                  std::size_t chunk = 1) {
  workers = resolve_workers(workers);
  if (workers == 1 || n <= chunk) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next { 0 };
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&]() {
    try {
      while (true) {
        std::size_t begin = next.fetch_add(chunk);
        if (begin >= n)
          break;
        std::size_t end = std::min(n, begin + chunk);
        for (std::size_t i = begin; i < end; ++i)
          fn(i);
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error)
        error = std::current_exception();
      next.store(n);
    }
  };

  const std::size_t count =
      std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> threads;
  threads.reserve(count - 1);
  for (std::size_t t = 1; t < count; ++t)
    threads.emplace_back(body);
  body();
  for (auto &t: threads)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

}  // namespace chemdiv

#endif  // CHEMDIV_PARALLEL_H_
