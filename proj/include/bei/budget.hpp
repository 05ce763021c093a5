#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace bei {

enum class BudgetKind { nonfree_vertices, time };

/// Thrown when an exponential computation would exceed its configured budget.
/// Never thrown after partial results have been returned.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(BudgetKind kind, std::string what, std::uint64_t candidates = 0)
      : std::runtime_error(std::move(what)), kind_(kind), candidates_(candidates) {}

  BudgetKind kind() const { return kind_; }
  /// Number of candidate subsets the enumeration would have had to visit
  /// (saturates at UINT64_MAX); zero for time budgets.
  std::uint64_t candidates() const { return candidates_; }

 private:
  BudgetKind kind_;
  std::uint64_t candidates_;
};

/// Optional wall-clock cutoff shared by a whole computation.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline after(std::chrono::duration<double> budget) {
    Deadline d;
    d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(budget);
    return d;
  }
  static Deadline none() { return {}; }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  void check() const {
    if (expired()) throw BudgetExceeded(BudgetKind::time, "time budget exceeded");
  }

 private:
  std::optional<Clock::time_point> at_;
};

struct Budget {
  /// Largest number of non-free vertices a cutset enumeration may range over.
  int max_nonfree = 24;
  Deadline deadline;
};

}  // namespace bei
