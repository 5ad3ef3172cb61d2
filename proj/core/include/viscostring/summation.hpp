#pragma once

#include <cstddef>
#include <span>

namespace viscostring {

// Pairwise (tree) summation with a fixed split rule. The association order
// depends only on the length, so results are reproducible bit for bit
// regardless of how callers are scheduled.

double pairwise_sum(std::span<const double> values);

/// sum_i a[i] * b[i], same tree as pairwise_sum.
double pairwise_dot(std::span<const double> a, std::span<const double> b);

}  // namespace viscostring
