#pragma once

#include <string>
#include <utility>
#include <vector>

#include "viscostring/time_grid.hpp"

namespace viscostring {

enum class KernelFamily { Zero, ExponentialSum, Polynomial };

std::string to_string(KernelFamily family);
/// Accepts "zero", "exponential_sum", "polynomial" (case-insensitive).
KernelFamily kernel_family_from_string(const std::string& name);

/// One term a * exp(-b t) of an exponential-sum kernel.
struct ExponentialTerm {
  double a;
  double b;
};

/// Analytic memory kernel M(t) with closed-form derivatives up to order 2.
///
/// Supported families:
///   Zero            M = 0
///   ExponentialSum  M = sum_i a_i exp(-b_i t), every b_i > 0
///   Polynomial      M = sum_k c_k t^k, degree <= 4
class MemoryKernel {
 public:
  static MemoryKernel zero();
  static MemoryKernel exponential_sum(std::vector<ExponentialTerm> terms);
  static MemoryKernel polynomial(std::vector<double> coefficients);

  /// Builds a kernel from a family tag and a flat coefficient list
  /// (a_1, b_1, a_2, b_2, ... for exponential sums; c_0..c_d for polynomials).
  static MemoryKernel from_coefficients(KernelFamily family,
                                        const std::vector<double>& coefficients);

  KernelFamily family() const { return family_; }
  const std::vector<ExponentialTerm>& terms() const { return terms_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  /// Flat coefficient list in the from_coefficients layout.
  std::vector<double> flat_coefficients() const;

  /// d^order M / dt^order at t >= 0, order in {0, 1, 2}.
  double derivative(double t, int order) const;
  double operator()(double t) const { return derivative(t, 0); }

  /// Relaxation function N(t) = 1 + int_0^t M.
  double relaxation(double t) const;

  /// alpha = -N'(0)/2 = -M(0)/2.
  double alpha() const { return -0.5 * derivative(0.0, 0); }

  /// True when M vanishes identically (Zero family, or all coefficients 0).
  bool is_identically_zero() const;

 private:
  MemoryKernel() = default;

  KernelFamily family_ = KernelFamily::Zero;
  std::vector<ExponentialTerm> terms_;
  std::vector<double> coefficients_;
};

/// Closed-form derivatives of N_alpha(t) = exp(2 alpha t) N(t), order 0..3.
double scaled_relaxation(const MemoryKernel& kernel, double t, int order);

/// Samples of the transformed kernels on a shared grid. Immutable after
/// construction.
struct DerivedKernelSet {
  MemoryKernel kernel;
  TimeGrid grid;
  double alpha = 0.0;

  std::vector<double> relaxation;         // N
  std::vector<double> scaled;             // N_alpha
  std::vector<double> scaled_d1;          // N_alpha'
  std::vector<double> scaled_d2;          // N_alpha''
  std::vector<double> scaled_memory;      // M_alpha = exp(2 alpha t) M
  std::vector<double> velocity_kernel;    // H = N_alpha' - 2 alpha N_alpha
  std::vector<double> stress_kernel;      // K = N_alpha + F
  std::vector<double> stress_correction;  // F = N_alpha * M_alpha
  std::vector<double> n0;                 // N_0 = N_alpha'' - alpha N_alpha'
  std::vector<double> n1;                 // N_1 = alpha N_0 - N_0'
  std::vector<double> resolvent;          // L = -N_alpha' * L - N_alpha'

  /// N_0(0) in closed form.
  double n0_at_zero = 0.0;
};

/// Samples every derived kernel on the grid. F is the product-trapezoidal
/// convolution N_alpha * M_alpha; L solves its Volterra equation by the
/// trapezoidal rule.
DerivedKernelSet derive_kernels(const MemoryKernel& kernel, const TimeGrid& grid);

/// Outcome of exceptional_index_check when no index is exceptional.
struct ExceptionalCheck {
  double alpha = 0.0;
  /// alpha^2 > 1: beta_n is non-real for 1 <= n < |alpha|.
  bool non_real_beta = false;
};

/// Throws ExceptionalIndexError(n) if alpha^2 = n^2 for some 1 <= n <= n_max.
ExceptionalCheck exceptional_index_check(const MemoryKernel& kernel, int n_max);

}  // namespace viscostring
