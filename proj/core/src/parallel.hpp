#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace prorata::detail {

// Evaluates fn(i) for i in [0, count) on up to `threads` workers and returns the
// results in index order. If any call throws, the exception from the lowest
// failing index is rethrown after all workers finish.
template <class Result, class Fn>
std::vector<Result> run_indexed(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < count; i += threads) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace prorata::detail
