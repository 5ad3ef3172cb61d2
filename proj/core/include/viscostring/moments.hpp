#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "viscostring/kernels.hpp"
#include "viscostring/linalg.hpp"
#include "viscostring/spectral.hpp"
#include "viscostring/volterra.hpp"

namespace viscostring {

/// Velocity targets xi_n and stress targets eta_n for n = 1..n_max, in raw
/// functional units. gamma_n = xi_n + i eta_n, gamma_{-n} = conj(gamma_n).
struct MomentTarget {
  std::vector<double> xi;
  std::vector<double> eta;

  MomentTarget() = default;
  MomentTarget(std::vector<double> xi, std::vector<double> eta);

  int n_max() const { return static_cast<int>(xi.size()); }
  /// Defined for n in +-1..+-n_max.
  Complex gamma(int n) const;
  double norm() const;

  static MomentTarget zero(int n_max);
  /// Components drawn from SplitMix64(seed) as uniform [-1, 1), then scaled
  /// to unit l2 norm over all (xi, eta).
  static MomentTarget random_unit(int n_max, std::uint64_t seed);
};

/// SplitMix64: state += 0x9E3779B97F4A7C15; z = state;
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
/// return z ^ (z >> 31).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Top 53 bits mapped to [0, 1).
  double uniform();

 private:
  std::uint64_t state_;
};

/// z_n and Z_n for n = 1..n_max, with the largest deviation between the ODE
/// route and the quadrature-assembly route for Z_n.
struct ModeFamily {
  std::vector<ModeTrajectory> little_z;
  std::vector<ModeTrajectory> big_z;
  double cross_check_deviation = 0.0;
};

/// Builds the family by solve_mode_Zn_ode and cross-checks each mode against
/// assemble_Zn_from_zn; throws Error if the deviation exceeds 100 h^2.
ModeFamily build_family(const DerivedKernelSet& kernels, int n_max);

struct GramSystem {
  TimeGrid grid;
  /// Row/column order: 1..n_max, then -1..-n_max.
  std::vector<int> indices;
  /// Z_m for each index (negative ones are exact conjugates).
  std::vector<ModeTrajectory> family;
  HermitianMatrix matrix;
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  double condition() const;
  int n_max() const { return static_cast<int>(indices.size() / 2); }
};

/// G_{mn} = int_0^T Z_m conj(Z_n) dt by the trapezoidal rule over the
/// conjugate-extended family; extremes by cyclic Jacobi.
GramSystem gram(std::span<const ModeTrajectory> big_z, const TimeGrid& grid);

struct SynthesisReport {
  /// Physical control f(t).
  ControlSignal control;
  /// e^{2 alpha t} f(t), the input entering the moment equations.
  std::vector<double> renamed_control;
  std::vector<int> indices;
  std::vector<Complex> targets;
  std::vector<Complex> achieved;
  std::vector<Complex> residuals;
  std::vector<Complex> coefficients;
  double max_relative_residual = 0.0;
  double control_l2_norm = 0.0;
  double renamed_l2_norm = 0.0;
  /// a^H G a, equal to renamed_l2_norm^2 for the minimal-norm solution.
  double energy = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double condition = 0.0;
  /// ||Im f|| / ||f|| before the imaginary part is discarded.
  double imaginary_ratio = 0.0;
  /// Horizon below 2 pi: Riesz property not guaranteed.
  bool short_horizon = false;
};

/// lambda_min <= kNearSingularFactor * eps * lambda_max signals frame collapse.
inline constexpr double kNearSingularFactor = 1e3;

/// Minimal-norm control with int_0^T Z_n(s) f(T - s) ds = gamma_n for
/// |n| <= n_max, in the span of conj(Z_m). Throws NearSingularGramError.
SynthesisReport synthesize_control(const GramSystem& system, const MomentTarget& target,
                                   double alpha);

/// Assigns deformation coefficients c_n and stress coefficients d_n,
/// n = 1..N_f, by a real Gram system over the 2 N_f moment functions
/// n (N_alpha * z_n) and n (F * z_n). Targets are c_n + i d_n; achieved values
/// come from a round trip through simulate_coefficients.
/// Throws ElasticDegeneracyError (M = 0, c != d) or NearSingularGramError.
SynthesisReport finite_pair_control(const DerivedKernelSet& kernels,
                                    std::span<const double> c, std::span<const double> d);

struct FrameBoundsRow {
  int n_max = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Extreme eigenvalues of the Gram matrix of {Z_n / ||Z_n||}, |n| <= n_max.
FrameBoundsRow normalized_gram_extremes(std::span<const ModeTrajectory> big_z,
                                        const TimeGrid& grid, int n_max);

/// Rows for each requested truncation (default 4, 8, 16, 32).
std::vector<FrameBoundsRow> frame_bounds(const DerivedKernelSet& kernels,
                                         std::vector<int> n_max_values = {4, 8, 16, 32});

struct ClosenessReport {
  /// 1..n_max then -1..-n_max.
  std::vector<int> indices;
  /// ||Z_n - e^{(alpha + i sign(n) beta_|n|) t}||^2 in L^2(0, T).
  std::vector<double> distance_sq;
  std::vector<double> scaled;  // n^2 d_n
  /// partial_sums[N - 1] = sum_{0 < |n| <= N} d_n; tail[N - 1] = total - partial.
  std::vector<double> partial_sums;
  std::vector<double> tail;
};

/// Requires every beta_n real and nonzero (throws ExceptionalIndexError).
ClosenessReport quadratic_closeness(std::span<const ModeTrajectory> big_z,
                                    const DerivedKernelSet& kernels);

}  // namespace viscostring
