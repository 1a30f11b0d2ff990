#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace brlab::cli {

// Runs f(0), ..., f(n-1) on up to `jobs` threads. Callers write results into slots
// indexed by i, so output order does not depend on scheduling. The first exception
// by index is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  std::vector<std::exception_ptr> errors(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    for (std::size_t t = 0; t < w; ++t)
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            f(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace brlab::cli
