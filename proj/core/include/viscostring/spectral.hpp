#pragma once

#include <complex>
#include <span>
#include <vector>

#include "viscostring/kernels.hpp"
#include "viscostring/time_grid.hpp"
#include "viscostring/volterra.hpp"

namespace viscostring {

/// beta_n = sqrt(n^2 - alpha^2) and mu_n = n^2 / beta_n^2 for one index.
struct ModeParams {
  int n = 0;
  Complex beta;
  Complex mu;

  bool real_beta() const { return beta.imag() == 0.0; }
  /// g_n(t) = e^{alpha t} (cos beta t + (alpha / beta) sin beta t).
  std::vector<Complex> profile(double alpha, const TimeGrid& grid) const;
};

/// Closed form; the complex branch has nonnegative real part. Throws
/// ExceptionalIndexError when alpha^2 = n^2.
ModeParams mode_params(int n, double alpha);

/// Physical boundary displacement f(t) sampled on a grid.
struct ControlSignal {
  TimeGrid grid;
  std::vector<double> samples;

  ControlSignal(TimeGrid grid, std::vector<double> samples);
  static ControlSignal zero(const TimeGrid& grid);

  /// e^{2 alpha t} f(t): the input seen by the transformed mode equations.
  std::vector<double> renamed(double alpha) const;
  double l2_norm() const;
};

/// Raw mode functionals of the controlled solution at time T for
/// n = 1..n_max (index i holds mode n = i + 1).
///
/// The physical fields are
///   w(x,T)   = s * sum_n w_n sin nx
///   w_t(x,T) = s * sum_n v_n n sin nx
///   sigma(x,T) = s * sum_n sigma_n n cos nx
/// with s = physical_scale = (2/pi) e^{-2 alpha T}; q_n is scaled the same way
/// against n cos nx.
struct SpectralState {
  double horizon = 0.0;
  double alpha = 0.0;
  double physical_scale = 0.0;
  std::vector<double> deformation;
  std::vector<double> velocity;
  std::vector<double> stress;
  std::vector<double> integrated_stress;

  int n_max() const { return static_cast<int>(deformation.size()); }
  static SpectralState zero(int n_max, double horizon, double alpha);
};

/// Evaluates the three output series' inner brackets against the reversed
/// control. `z_family` must hold LittleZ trajectories for n = 1..n_max in order,
/// sampled on the control's grid.
SpectralState simulate_coefficients(const ControlSignal& control,
                                    std::span<const ModeTrajectory> z_family,
                                    const DerivedKernelSet& kernels);

enum class FieldKind { Deformation, Velocity, Stress };

/// Partial sum of the selected series at each x in [0, pi], physical scaling
/// applied.
std::vector<double> reconstruct_field(const SpectralState& state, FieldKind which,
                                      std::span<const double> x_grid);

/// Coefficients against the orthonormal bases sqrt(2/pi) sin nx (deformation),
/// sqrt(2/pi) n sin nx (velocity, H^{-1}) and sqrt(2/pi) n cos nx (stress,
/// Riesz basis of H^{-1}, equivalent norm).
struct NormalizedCoefficients {
  std::vector<double> deformation;
  std::vector<double> velocity;
  std::vector<double> stress;
};
NormalizedCoefficients normalized_coefficients(const SpectralState& state);

struct CoefficientNorms {
  double l2_deformation = 0.0;
  double hminus1_velocity = 0.0;
  double hminus1_stress = 0.0;
};
CoefficientNorms coefficient_norms(const SpectralState& state);

}  // namespace viscostring
