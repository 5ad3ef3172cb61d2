#pragma once

#include <span>
#include <string>
#include <vector>

#include "viscostring/kernels.hpp"
#include "viscostring/moments.hpp"
#include "viscostring/spectral.hpp"
#include "viscostring/volterra.hpp"

namespace viscostring {

enum class TrendVerdict { Bounded, Growing };
std::string to_string(TrendVerdict verdict);

/// Per-index deviations e_n and the growth test on n * e_n: Bounded iff the
/// maximum of n * e_n over the upper half of the index range is at most twice
/// the maximum over the lower half.
struct AsymptoticReport {
  std::string label;
  std::vector<int> indices;
  std::vector<double> deviation;
  std::vector<double> scaled;
  double lower_max = 0.0;
  double upper_max = 0.0;
  TrendVerdict verdict = TrendVerdict::Bounded;
  double horizon = 0.0;
  int steps = 0;
};

inline constexpr double kTrendRatio = 2.0;

/// Applies the verdict rule to (index, deviation) pairs sorted by |n|.
AsymptoticReport make_trend_report(std::string label, std::vector<int> indices,
                                   std::vector<double> deviation, const TimeGrid& grid);

/// Inclusive range of positive mode indices.
struct ModeRange {
  int first = 1;
  int last = 32;
};

/// Solves z_n for every n in the range (ModeKind::LittleZ, ordered).
std::vector<ModeTrajectory> solve_little_z_family(const DerivedKernelSet& kernels,
                                                  ModeRange range);

/// e_n = sup_t |z_n(t) - e^{alpha t} cos beta_n t|.
AsymptoticReport check_zn_asymptotics(const DerivedKernelSet& kernels,
                                      std::span<const ModeTrajectory> z_family);
AsymptoticReport check_zn_asymptotics(const DerivedKernelSet& kernels, ModeRange range);

/// e_n = sup_t |z_n'(t) / beta_n + e^{alpha t} sin beta_n t|.
AsymptoticReport check_zn_derivative_asymptotics(const DerivedKernelSet& kernels,
                                                 std::span<const ModeTrajectory> z_family);
AsymptoticReport check_zn_derivative_asymptotics(const DerivedKernelSet& kernels,
                                                 ModeRange range);

/// e_n = sup_t |n (F * z_n)(t) - F(0) e^{alpha t} sin beta_n t| for F given by
/// grid samples and its exact value at 0.
AsymptoticReport check_convolution_lemma(const DerivedKernelSet& kernels,
                                         std::span<const ModeTrajectory> z_family,
                                         std::span<const double> f_samples,
                                         double f_at_zero);
/// Same with F an analytic kernel-family function.
AsymptoticReport check_convolution_lemma(const DerivedKernelSet& kernels,
                                         std::span<const ModeTrajectory> z_family,
                                         const MemoryKernel& f_spec);

/// max_t |G_n + L * G_n - z_n| with G_n assembled from the solved z_n.
double check_resolvent_identity(const DerivedKernelSet& kernels, int n);
double check_resolvent_identity(const DerivedKernelSet& kernels, const ModeTrajectory& zn);

/// e_n = |sigma_n - w_n| on the raw functionals.
AsymptoticReport check_stress_deformation_gap(const SpectralState& state,
                                              const TimeGrid& grid);

struct RoundTripResult {
  MomentTarget target;
  std::vector<Complex> achieved;  // v_n + i sigma_n, n = 1..n_max
  double relative_error = 0.0;
  SynthesisReport synthesis;
  SpectralState state;
};

/// synthesize_control followed by simulate_coefficients; compares achieved
/// (v_n, sigma_n) with (xi_n, eta_n) in l2.
RoundTripResult closed_loop_roundtrip(const DerivedKernelSet& kernels,
                                      const MomentTarget& target);
RoundTripResult closed_loop_roundtrip(const DerivedKernelSet& kernels,
                                      const ModeFamily& family, const GramSystem& system,
                                      const MomentTarget& target);

}  // namespace viscostring
