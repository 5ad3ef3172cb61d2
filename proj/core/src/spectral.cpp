#include "viscostring/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "viscostring/errors.hpp"
#include "viscostring/parallel.hpp"

namespace viscostring {
namespace {

double l2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<Complex> ModeParams::profile(double alpha, const TimeGrid& grid) const {
  std::vector<Complex> g(grid.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double t = grid.time(k);
    g[k] = std::exp(alpha * t) *
           (std::cos(beta * t) + (alpha / beta) * std::sin(beta * t));
  }
  return g;
}

ModeParams mode_params(int n, double alpha) {
  if (n == 0) throw std::invalid_argument("mode_params: n must be nonzero");
  const double n_sq = static_cast<double>(n) * n;
  const double beta_sq = n_sq - alpha * alpha;
  if (std::abs(beta_sq) <= 1e-12 * n_sq) throw ExceptionalIndexError(n, alpha);
  ModeParams p;
  p.n = n;
  p.beta = beta_sq > 0.0 ? Complex(std::sqrt(beta_sq), 0.0)
                         : Complex(0.0, std::sqrt(-beta_sq));
  p.mu = n_sq / (p.beta * p.beta);
  return p;
}

ControlSignal::ControlSignal(TimeGrid grid_in, std::vector<double> samples_in)
    : grid(grid_in), samples(std::move(samples_in)) {
  if (samples.size() != grid.size()) {
    throw std::invalid_argument("ControlSignal: sample count does not match grid");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw std::invalid_argument("ControlSignal: non-finite sample");
  }
}

ControlSignal ControlSignal::zero(const TimeGrid& grid) {
  return ControlSignal(grid, std::vector<double>(grid.size(), 0.0));
}

std::vector<double> ControlSignal::renamed(double alpha) const {
  std::vector<double> out(samples.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = std::exp(2.0 * alpha * grid.time(k)) * samples[k];
  }
  return out;
}

double ControlSignal::l2_norm() const {
  std::vector<double> sq(samples.size());
  for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = samples[k] * samples[k];
  return std::sqrt(trapezoid(sq, grid));
}

SpectralState SpectralState::zero(int n_max, double horizon, double alpha) {
  SpectralState s;
  s.horizon = horizon;
  s.alpha = alpha;
  s.physical_scale = 2.0 / std::numbers::pi * std::exp(-2.0 * alpha * horizon);
  s.deformation.assign(n_max, 0.0);
  s.velocity.assign(n_max, 0.0);
  s.stress.assign(n_max, 0.0);
  s.integrated_stress.assign(n_max, 0.0);
  return s;
}

SpectralState simulate_coefficients(const ControlSignal& control,
                                    std::span<const ModeTrajectory> z_family,
                                    const DerivedKernelSet& kernels) {
  const TimeGrid& grid = kernels.grid;
  if (!(control.grid == grid)) {
    throw std::invalid_argument("simulate_coefficients: control grid differs from kernel grid");
  }
  for (std::size_t i = 0; i < z_family.size(); ++i) {
    const auto& z = z_family[i];
    if (z.kind != ModeKind::LittleZ || z.n != static_cast<int>(i) + 1 ||
        z.samples.size() != grid.size()) {
      throw std::invalid_argument(
          "simulate_coefficients: family must hold LittleZ modes 1..n_max on the grid");
    }
  }
  const int n_max = static_cast<int>(z_family.size());
  SpectralState state = SpectralState::zero(n_max, grid.horizon(), kernels.alpha);
  const std::vector<double> f = control.renamed(kernels.alpha);

  // Decay weights for the time integral of the stress functional.
  std::vector<double> decay(grid.size());
  for (std::size_t k = 0; k < decay.size(); ++k) {
    decay[k] = std::exp(2.0 * kernels.alpha * (grid.horizon() - grid.time(k)));
  }

  parallel_for(static_cast<std::size_t>(n_max), [&](std::size_t i) {
    const double n = static_cast<double>(i + 1);
    const std::vector<double> z = z_family[i].real_part();
    const auto nz = convolve(kernels.scaled, z, grid);
    const auto hz = convolve(kernels.velocity_kernel, z, grid);
    auto kz = convolve(kernels.stress_kernel, z, grid);
    std::vector<double> velocity_bracket(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) velocity_bracket[k] = z[k] + hz[k];
    state.deformation[i] = n * reversed_integral(f, nz, grid);
    state.velocity[i] = reversed_integral(f, velocity_bracket, grid);
    state.stress[i] = n * reversed_integral(f, kz, grid);

    // sigma_n(tau) for every tau, then int_0^T e^{2 alpha (T - tau)} sigma_n(tau).
    auto running = convolve(f, kz, grid);
    for (std::size_t k = 0; k < running.size(); ++k) running[k] *= n * decay[k];
    state.integrated_stress[i] = trapezoid(running, grid);
  });
  return state;
}

std::vector<double> reconstruct_field(const SpectralState& state, FieldKind which,
                                      std::span<const double> x_grid) {
  constexpr double kPi = std::numbers::pi;
  std::vector<double> out(x_grid.size(), 0.0);
  for (std::size_t j = 0; j < x_grid.size(); ++j) {
    const double x = x_grid[j];
    if (!(x >= -1e-12 && x <= kPi + 1e-12)) {
      throw std::invalid_argument("reconstruct_field: x outside [0, pi]");
    }
    double sum = 0.0;
    for (int i = 0; i < state.n_max(); ++i) {
      const double n = i + 1;
      switch (which) {
        case FieldKind::Deformation:
          sum += state.deformation[i] * std::sin(n * x);
          break;
        case FieldKind::Velocity:
          sum += state.velocity[i] * n * std::sin(n * x);
          break;
        case FieldKind::Stress:
          sum += state.stress[i] * n * std::cos(n * x);
          break;
      }
    }
    out[j] = state.physical_scale * sum;
  }
  return out;
}

NormalizedCoefficients normalized_coefficients(const SpectralState& state) {
  const double factor = state.physical_scale * std::sqrt(std::numbers::pi / 2.0);
  NormalizedCoefficients c;
  for (int i = 0; i < state.n_max(); ++i) {
    c.deformation.push_back(factor * state.deformation[i]);
    c.velocity.push_back(factor * state.velocity[i]);
    c.stress.push_back(factor * state.stress[i]);
  }
  return c;
}

CoefficientNorms coefficient_norms(const SpectralState& state) {
  const auto c = normalized_coefficients(state);
  return {l2(c.deformation), l2(c.velocity), l2(c.stress)};
}

}  // namespace viscostring
