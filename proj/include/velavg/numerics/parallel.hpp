#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace velavg {

/// Worker-count policy passed explicitly to every parallel entry point.
struct Exec {
  unsigned threads = 0;  // 0: hardware concurrency

  unsigned resolved() const {
    if (threads > 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

/// Runs fn(i) for i in [0, n). Work is handed out in fixed-size chunks; the
/// lowest-index exception (if any) is rethrown after all workers join.
template <class Fn>
void parallel_for(std::size_t n, const Exec& exec, Fn&& fn, std::size_t chunk = 64) {
  if (n == 0) return;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(exec.resolved(), (n + chunk - 1) / chunk));
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_index = std::numeric_limits<std::size_t>::max();

  auto work = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (i < first_error_index) {
            first_error_index = i;
            first_error = std::current_exception();
          }
          break;
        }
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (first_error) std::rethrow_exception(first_error);
}

/// Evaluates fn(i) for every job into its own slot.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, const Exec& exec, Fn&& fn,
                            std::size_t chunk = 1) {
  std::vector<T> out(n);
  parallel_for(n, exec, [&](std::size_t i) { out[i] = fn(i); }, chunk);
  return out;
}

/// Parallel evaluation followed by a sequential left fold over job results.
///
/// The fold order is the job order, so the result is bitwise identical to
/// the sequential computation for any worker count.
template <class T, class Job, class Combine>
T parallel_reduce(std::size_t n, const Exec& exec, T identity, Job&& job,
                  Combine&& combine, std::size_t chunk = 1) {
  std::vector<T> partial = parallel_map<T>(n, exec, std::forward<Job>(job), chunk);
  T acc = identity;
  for (auto& v : partial) acc = combine(acc, v);
  return acc;
}

}  // namespace velavg
