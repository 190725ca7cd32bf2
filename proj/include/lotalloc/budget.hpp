#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>

#include "lotalloc/errors.hpp"

namespace lotalloc {

/// Limits for an exhaustive computation. Zero means unlimited.
struct Budget {
  double seconds = 0;
  std::uint64_t max_steps = 0;
};

/// Shared step counter and wall clock; safe to charge from several threads.
class BudgetTracker {
 public:
  explicit BudgetTracker(Budget budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  /// Adds `steps` and throws ResourceError once either limit is exceeded.
  void charge(std::uint64_t steps, const std::string& what) {
    std::uint64_t used = used_.fetch_add(steps, std::memory_order_relaxed) + steps;
    if (budget_.max_steps != 0 && used > budget_.max_steps) {
      throw ResourceError(what + ": step budget of " + std::to_string(budget_.max_steps) + " exceeded");
    }
    if (budget_.seconds > 0 && elapsed() > budget_.seconds) {
      throw ResourceError(what + ": time budget of " + std::to_string(budget_.seconds) + "s exceeded after " +
                          std::to_string(used) + " steps");
    }
  }

  std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> used_{0};
};

}  // namespace lotalloc
