#include "viscostring/summation.hpp"

#include <stdexcept>

namespace viscostring {
namespace {

constexpr std::size_t kLanes = 8;
constexpr std::size_t kLeaf = 128;

// Leaf: eight interleaved partial sums combined in a fixed tree.
double leaf_dot(const double* a, const double* b, std::size_t n) {
  double acc[kLanes] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) acc[l] += a[i + l] * b[i + l];
  }
  for (std::size_t l = 0; i < n; ++i, ++l) acc[l] += a[i] * b[i];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) +
         ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

double leaf_sum(const double* a, std::size_t n) {
  double acc[kLanes] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) acc[l] += a[i + l];
  }
  for (std::size_t l = 0; i < n; ++i, ++l) acc[l] += a[i];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) +
         ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

// Split point rounded to a multiple of the lane width.
std::size_t split(std::size_t n) {
  std::size_t half = n / 2;
  return half - half % kLanes;
}

double tree_dot(const double* a, const double* b, std::size_t n) {
  if (n <= kLeaf) return leaf_dot(a, b, n);
  const std::size_t m = split(n);
  return tree_dot(a, b, m) + tree_dot(a + m, b + m, n - m);
}

double tree_sum(const double* a, std::size_t n) {
  if (n <= kLeaf) return leaf_sum(a, n);
  const std::size_t m = split(n);
  return tree_sum(a, m) + tree_sum(a + m, n - m);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return tree_sum(values.data(), values.size());
}

double pairwise_dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("pairwise_dot: length mismatch");
  }
  return tree_dot(a.data(), b.data(), a.size());
}

}  // namespace viscostring
