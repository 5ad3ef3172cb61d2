#pragma once

#include <complex>
#include <span>
#include <vector>

#include "viscostring/kernels.hpp"
#include "viscostring/time_grid.hpp"

namespace viscostring {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Product-trapezoidal convolution.
//
//   (a * b)(t_k) ~ h [ a_k b_0 / 2 + sum_{j=1}^{k-1} a_{k-j} b_j + a_0 b_k / 2 ]
//
// result[0] = 0. Both inputs must have grid.size() samples. Interior sums use
// pairwise_dot, so results do not depend on thread scheduling.
// ---------------------------------------------------------------------------

std::vector<double> convolve(std::span<const double> a, std::span<const double> b,
                             const TimeGrid& grid);
std::vector<Complex> convolve(std::span<const Complex> a,
                              std::span<const Complex> b, const TimeGrid& grid);

/// Trapezoidal int_0^T a(T - s) b(s) ds, i.e. the last sample of a * b.
double reversed_integral(std::span<const double> a, std::span<const double> b,
                         const TimeGrid& grid);
Complex reversed_integral(std::span<const double> a, std::span<const Complex> b,
                          const TimeGrid& grid);

/// Trapezoidal int_0^T a(s) ds.
double trapezoid(std::span<const double> a, const TimeGrid& grid);

enum class ModeKind { LittleZ, BigZ, Derivative };

/// Sampled z_n, Z_n or z_n' for one mode index.
struct ModeTrajectory {
  int n = 0;
  ModeKind kind = ModeKind::LittleZ;
  std::vector<Complex> samples;

  std::vector<double> real_part() const;
};

/// z' = 2 alpha z - n^2 (N_alpha * z), z(0) = 1.
///
/// Implicit trapezoidal stepping; the history integral uses product
/// trapezoidal weights and the newest weight is folded into the scalar
/// update, which is solved exactly. Throws ResolutionError if h * |n| > 0.1.
ModeTrajectory solve_mode_zn(int n, const DerivedKernelSet& kernels);

/// z_n' = 2 alpha z_n - n^2 (N_alpha * z_n) evaluated from the samples.
ModeTrajectory mode_zn_derivative(const ModeTrajectory& zn,
                                  const DerivedKernelSet& kernels);

/// Z' = 2 alpha Z - n^2 (N_alpha * Z) + H + i n K, Z(0) = 1, same scheme as
/// solve_mode_zn with complex state.
ModeTrajectory solve_mode_Zn_ode(int n, const DerivedKernelSet& kernels);

/// Z_n = z_n + H * z_n + i n K * z_n by direct quadrature.
ModeTrajectory assemble_Zn_from_zn(const ModeTrajectory& zn,
                                   const DerivedKernelSet& kernels);

/// Independent reference for exponential-sum kernels: N_alpha is itself a sum
/// c_j exp(-lambda_j t), so the memory term is carried by auxiliary states
/// u_j' = -lambda_j u_j + c_j z and the system is integrated by classical
/// RK4 with `substeps` steps per grid interval.
ModeTrajectory oracle_exponential_mode(int n, const MemoryKernel& kernel,
                                       const TimeGrid& grid, int substeps = 8);

}  // namespace viscostring
