#pragma once

#include <cstddef>

namespace viscostring {

/// Uniform grid t_k = k * h on [0, T], k = 0..steps.
class TimeGrid {
 public:
  TimeGrid(double horizon, int steps);

  double horizon() const { return horizon_; }
  int steps() const { return steps_; }
  double step() const { return horizon_ / steps_; }
  std::size_t size() const { return static_cast<std::size_t>(steps_) + 1; }
  double time(std::size_t k) const { return static_cast<double>(k) * step(); }

  /// Throws ResolutionError unless h * n_max <= 0.1.
  void require_resolution(int n_max) const;
  bool resolves(int n_max) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double horizon_;
  int steps_;
};

inline constexpr double kResolutionLimit = 0.1;

}  // namespace viscostring
