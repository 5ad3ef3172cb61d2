#include "viscostring/time_grid.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "viscostring/errors.hpp"

namespace viscostring {

TimeGrid::TimeGrid(double horizon, int steps) : horizon_(horizon), steps_(steps) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("TimeGrid: horizon must be positive and finite");
  }
  if (steps <= 0) {
    throw std::invalid_argument("TimeGrid: empty grid (steps must be positive)");
  }
}

bool TimeGrid::resolves(int n_max) const {
  // Small slack so that e.g. T = 2*pi, steps = 64*pi*n exactly at the limit
  // is not rejected by round-off.
  return step() * std::abs(n_max) <= kResolutionLimit * (1.0 + 1e-12);
}

void TimeGrid::require_resolution(int n_max) const {
  if (!resolves(n_max)) throw ResolutionError(step(), n_max);
}

}  // namespace viscostring
