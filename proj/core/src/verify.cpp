#include "viscostring/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "viscostring/errors.hpp"
#include "viscostring/parallel.hpp"

namespace viscostring {
namespace {

double real_beta(int n, double alpha) {
  const ModeParams p = mode_params(n, alpha);
  if (!p.real_beta()) throw ExceptionalIndexError(n, alpha, true);
  return p.beta.real();
}

template <typename Fn>
AsymptoticReport sweep(const std::string& label, const DerivedKernelSet& kernels,
                       std::span<const ModeTrajectory> z_family, Fn&& deviation_of) {
  std::vector<int> indices;
  for (const auto& z : z_family) {
    if (z.kind != ModeKind::LittleZ) {
      throw std::invalid_argument(label + ": expected LittleZ trajectories");
    }
    indices.push_back(z.n);
  }
  for (int n : indices) real_beta(n, kernels.alpha);
  std::vector<double> dev(z_family.size());
  parallel_for(z_family.size(),
               [&](std::size_t i) { dev[i] = deviation_of(z_family[i]); });
  return make_trend_report(label, std::move(indices), std::move(dev), kernels.grid);
}

}  // namespace

std::string to_string(TrendVerdict verdict) {
  return verdict == TrendVerdict::Bounded ? "Bounded" : "Growing";
}

AsymptoticReport make_trend_report(std::string label, std::vector<int> indices,
                                   std::vector<double> deviation, const TimeGrid& grid) {
  if (indices.size() != deviation.size()) {
    throw std::invalid_argument("make_trend_report: size mismatch");
  }
  std::vector<std::size_t> order(indices.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(indices[a]) < std::abs(indices[b]);
  });
  AsymptoticReport r;
  r.label = std::move(label);
  r.horizon = grid.horizon();
  r.steps = grid.steps();
  for (std::size_t i : order) {
    r.indices.push_back(indices[i]);
    r.deviation.push_back(deviation[i]);
    r.scaled.push_back(std::abs(indices[i]) * deviation[i]);
  }
  const std::size_t lower = r.scaled.size() / 2;
  for (std::size_t i = 0; i < r.scaled.size(); ++i) {
    double& slot = i < lower ? r.lower_max : r.upper_max;
    slot = std::max(slot, r.scaled[i]);
  }
  r.verdict = r.upper_max <= kTrendRatio * r.lower_max ? TrendVerdict::Bounded
                                                        : TrendVerdict::Growing;
  return r;
}

std::vector<ModeTrajectory> solve_little_z_family(const DerivedKernelSet& kernels,
                                                  ModeRange range) {
  if (range.first < 1 || range.last < range.first) {
    throw std::invalid_argument("mode range must satisfy 1 <= first <= last");
  }
  kernels.grid.require_resolution(range.last);
  std::vector<ModeTrajectory> family(range.last - range.first + 1);
  parallel_for(family.size(), [&](std::size_t i) {
    family[i] = solve_mode_zn(range.first + static_cast<int>(i), kernels);
  });
  return family;
}

AsymptoticReport check_zn_asymptotics(const DerivedKernelSet& kernels,
                                      std::span<const ModeTrajectory> z_family) {
  const TimeGrid& grid = kernels.grid;
  return sweep("zn", kernels, z_family, [&](const ModeTrajectory& z) {
    const double beta = real_beta(z.n, kernels.alpha);
    double worst = 0.0;
    for (std::size_t k = 0; k < z.samples.size(); ++k) {
      const double t = grid.time(k);
      worst = std::max(worst, std::abs(z.samples[k].real() -
                                       std::exp(kernels.alpha * t) * std::cos(beta * t)));
    }
    return worst;
  });
}

AsymptoticReport check_zn_asymptotics(const DerivedKernelSet& kernels, ModeRange range) {
  return check_zn_asymptotics(kernels, solve_little_z_family(kernels, range));
}

AsymptoticReport check_zn_derivative_asymptotics(const DerivedKernelSet& kernels,
                                                 std::span<const ModeTrajectory> z_family) {
  const TimeGrid& grid = kernels.grid;
  return sweep("zn_derivative", kernels, z_family, [&](const ModeTrajectory& z) {
    const double beta = real_beta(z.n, kernels.alpha);
    const ModeTrajectory dz = mode_zn_derivative(z, kernels);
    double worst = 0.0;
    for (std::size_t k = 0; k < dz.samples.size(); ++k) {
      const double t = grid.time(k);
      worst = std::max(worst, std::abs(dz.samples[k].real() / beta +
                                       std::exp(kernels.alpha * t) * std::sin(beta * t)));
    }
    return worst;
  });
}

AsymptoticReport check_zn_derivative_asymptotics(const DerivedKernelSet& kernels,
                                                 ModeRange range) {
  return check_zn_derivative_asymptotics(kernels, solve_little_z_family(kernels, range));
}

AsymptoticReport check_convolution_lemma(const DerivedKernelSet& kernels,
                                         std::span<const ModeTrajectory> z_family,
                                         std::span<const double> f_samples,
                                         double f_at_zero) {
  const TimeGrid& grid = kernels.grid;
  if (f_samples.size() != grid.size()) {
    throw std::invalid_argument("check_convolution_lemma: F length does not match grid");
  }
  return sweep("convolution_lemma", kernels, z_family, [&](const ModeTrajectory& z) {
    const double beta = real_beta(z.n, kernels.alpha);
    const auto conv = convolve(f_samples, z.real_part(), grid);
    double worst = 0.0;
    for (std::size_t k = 0; k < conv.size(); ++k) {
      const double t = grid.time(k);
      worst = std::max(worst, std::abs(z.n * conv[k] - f_at_zero *
                                                           std::exp(kernels.alpha * t) *
                                                           std::sin(beta * t)));
    }
    return worst;
  });
}

AsymptoticReport check_convolution_lemma(const DerivedKernelSet& kernels,
                                         std::span<const ModeTrajectory> z_family,
                                         const MemoryKernel& f_spec) {
  std::vector<double> samples(kernels.grid.size());
  for (std::size_t k = 0; k < samples.size(); ++k) samples[k] = f_spec(kernels.grid.time(k));
  return check_convolution_lemma(kernels, z_family, samples, f_spec(0.0));
}

double check_resolvent_identity(const DerivedKernelSet& kernels, int n) {
  return check_resolvent_identity(kernels, solve_mode_zn(n, kernels));
}

double check_resolvent_identity(const DerivedKernelSet& kernels, const ModeTrajectory& zn) {
  if (zn.kind != ModeKind::LittleZ) {
    throw std::invalid_argument("check_resolvent_identity: expected LittleZ trajectory");
  }
  const TimeGrid& grid = kernels.grid;
  const double alpha = kernels.alpha;
  const ModeParams p = mode_params(zn.n, alpha);
  if (!p.real_beta()) throw ExceptionalIndexError(zn.n, alpha, true);
  const double beta = p.beta.real();
  const double mu = p.mu.real();
  const std::size_t size = grid.size();
  const std::vector<double> z = zn.real_part();

  std::vector<double> damped_sine(size);
  for (std::size_t k = 0; k < size; ++k) {
    const double t = grid.time(k);
    damped_sine[k] = std::exp(alpha * t) * std::sin(beta * t);
  }
  const auto d1_z = convolve(kernels.scaled_d1, z, grid);
  const auto sine_z = convolve(damped_sine, z, grid);
  const auto sine_n1 = convolve(damped_sine, kernels.n1, grid);
  const auto double_conv = convolve(sine_n1, z, grid);

  std::vector<double> g(size);
  for (std::size_t k = 0; k < size; ++k) {
    const double t = grid.time(k);
    g[k] = std::exp(alpha * t) * (std::cos(beta * t) + alpha / beta * std::sin(beta * t)) +
           (1.0 - mu) * d1_z[k] + kernels.n0_at_zero * mu / beta * sine_z[k] -
           mu / beta * double_conv[k];
  }
  const auto lg = convolve(kernels.resolvent, g, grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < size; ++k) worst = std::max(worst, std::abs(g[k] + lg[k] - z[k]));
  return worst;
}

AsymptoticReport check_stress_deformation_gap(const SpectralState& state,
                                              const TimeGrid& grid) {
  std::vector<int> indices;
  std::vector<double> dev;
  for (int i = 0; i < state.n_max(); ++i) {
    indices.push_back(i + 1);
    dev.push_back(std::abs(state.stress[i] - state.deformation[i]));
  }
  return make_trend_report("stress_deformation_gap", std::move(indices), std::move(dev),
                           grid);
}

RoundTripResult closed_loop_roundtrip(const DerivedKernelSet& kernels,
                                      const MomentTarget& target) {
  const ModeFamily family = build_family(kernels, target.n_max());
  const GramSystem system = gram(family.big_z, kernels.grid);
  return closed_loop_roundtrip(kernels, family, system, target);
}

RoundTripResult closed_loop_roundtrip(const DerivedKernelSet& kernels,
                                      const ModeFamily& family, const GramSystem& system,
                                      const MomentTarget& target) {
  RoundTripResult result{target, {}, 0.0,
                         synthesize_control(system, target, kernels.alpha), {}};
  result.state = simulate_coefficients(result.synthesis.control, family.little_z, kernels);
  double err = 0.0;
  for (int i = 0; i < target.n_max(); ++i) {
    const Complex achieved(result.state.velocity[i], result.state.stress[i]);
    result.achieved.push_back(achieved);
    err += std::norm(achieved - target.gamma(i + 1));
  }
  const double scale = target.norm();
  result.relative_error = scale > 0.0 ? std::sqrt(err) / scale : std::sqrt(err);
  return result;
}

}  // namespace viscostring
