#include "viscostring/volterra.hpp"

#include <cmath>
#include <stdexcept>

#include "viscostring/summation.hpp"

namespace viscostring {
namespace {

void require_length(std::size_t got, const TimeGrid& grid, const char* what) {
  if (got != grid.size()) {
    throw std::invalid_argument(std::string(what) +
                                ": sequence length does not match the grid");
  }
}

// sum_{j=1}^{k-1} a_{k-j} b_j with `a_reversed` = a read back to front.
double interior_dot(std::span<const double> a_reversed, std::span<const double> b,
                    std::size_t k) {
  if (k < 2) return 0.0;
  const std::size_t last = a_reversed.size() - 1;
  return pairwise_dot(a_reversed.subspan(last - k + 1, k - 1), b.subspan(1, k - 1));
}

std::vector<double> reversed(std::span<const double> a) {
  return std::vector<double>(a.rbegin(), a.rend());
}

// One real component of the mode scheme:
//   x' = 2 alpha x - n^2 (N_alpha * x) + g,  x(0) = x0.
std::vector<double> integrate_component(double n_sq, const DerivedKernelSet& ks,
                                        double x0, std::span<const double> forcing) {
  const TimeGrid& grid = ks.grid;
  const std::size_t size = grid.size();
  const double h = grid.step();
  const double alpha = ks.alpha;
  const std::vector<double>& kern = ks.scaled;
  const std::vector<double> kern_rev = reversed(kern);
  auto g = [&](std::size_t k) { return forcing.empty() ? 0.0 : forcing[k]; };

  std::vector<double> x(size, 0.0);
  x[0] = x0;
  double f_prev = 2.0 * alpha * x0 + g(0);
  const double lhs = 1.0 - 0.5 * h * (2.0 * alpha - n_sq * 0.5 * h * kern[0]);
  for (std::size_t k = 1; k < size; ++k) {
    const double history = interior_dot(kern_rev, x, k) + 0.5 * kern[k] * x[0];
    const double rhs =
        x[k - 1] + 0.5 * h * f_prev + 0.5 * h * (-n_sq * h * history + g(k));
    x[k] = rhs / lhs;
    const double conv = h * (history + 0.5 * kern[0] * x[k]);
    f_prev = 2.0 * alpha * x[k] - n_sq * conv + g(k);
  }
  return x;
}

void require_nonzero(int n) {
  if (n == 0) throw std::invalid_argument("mode index must be nonzero");
}

}  // namespace

std::vector<double> convolve(std::span<const double> a, std::span<const double> b,
                             const TimeGrid& grid) {
  require_length(a.size(), grid, "convolve");
  require_length(b.size(), grid, "convolve");
  const double h = grid.step();
  const std::vector<double> a_rev = reversed(a);
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t k = 1; k < out.size(); ++k) {
    out[k] = h * (0.5 * (a[k] * b[0] + a[0] * b[k]) + interior_dot(a_rev, b, k));
  }
  return out;
}

std::vector<Complex> convolve(std::span<const Complex> a, std::span<const Complex> b,
                              const TimeGrid& grid) {
  require_length(a.size(), grid, "convolve");
  require_length(b.size(), grid, "convolve");
  const std::size_t size = grid.size();
  std::vector<double> ar(size), ai(size), br(size), bi(size);
  for (std::size_t k = 0; k < size; ++k) {
    ar[k] = a[k].real();
    ai[k] = a[k].imag();
    br[k] = b[k].real();
    bi[k] = b[k].imag();
  }
  const auto rr = convolve(ar, br, grid);
  const auto ii = convolve(ai, bi, grid);
  const auto ri = convolve(ar, bi, grid);
  const auto ir = convolve(ai, br, grid);
  std::vector<Complex> out(size);
  for (std::size_t k = 0; k < size; ++k) out[k] = {rr[k] - ii[k], ri[k] + ir[k]};
  return out;
}

double reversed_integral(std::span<const double> a, std::span<const double> b,
                         const TimeGrid& grid) {
  require_length(a.size(), grid, "reversed_integral");
  require_length(b.size(), grid, "reversed_integral");
  const std::size_t last = grid.size() - 1;
  const std::vector<double> a_rev = reversed(a);
  return grid.step() * (0.5 * (a[last] * b[0] + a[0] * b[last]) +
                        interior_dot(a_rev, b, last));
}

Complex reversed_integral(std::span<const double> a, std::span<const Complex> b,
                          const TimeGrid& grid) {
  require_length(b.size(), grid, "reversed_integral");
  std::vector<double> br(b.size()), bi(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    br[k] = b[k].real();
    bi[k] = b[k].imag();
  }
  return {reversed_integral(a, br, grid), reversed_integral(a, bi, grid)};
}

double trapezoid(std::span<const double> a, const TimeGrid& grid) {
  require_length(a.size(), grid, "trapezoid");
  const std::size_t last = a.size() - 1;
  const double interior = last > 1 ? pairwise_sum(a.subspan(1, last - 1)) : 0.0;
  return grid.step() * (0.5 * (a[0] + a[last]) + interior);
}

std::vector<double> ModeTrajectory::real_part() const {
  std::vector<double> out(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) out[k] = samples[k].real();
  return out;
}

ModeTrajectory solve_mode_zn(int n, const DerivedKernelSet& kernels) {
  require_nonzero(n);
  kernels.grid.require_resolution(n);
  const double n_sq = static_cast<double>(n) * n;
  const auto x = integrate_component(n_sq, kernels, 1.0, {});
  ModeTrajectory traj{n, ModeKind::LittleZ, std::vector<Complex>(x.size())};
  for (std::size_t k = 0; k < x.size(); ++k) traj.samples[k] = x[k];
  return traj;
}

ModeTrajectory mode_zn_derivative(const ModeTrajectory& zn,
                                  const DerivedKernelSet& kernels) {
  if (zn.kind != ModeKind::LittleZ) {
    throw std::invalid_argument("mode_zn_derivative: expected a LittleZ trajectory");
  }
  const std::vector<double> z = zn.real_part();
  const auto conv = convolve(kernels.scaled, z, kernels.grid);
  const double n_sq = static_cast<double>(zn.n) * zn.n;
  ModeTrajectory out{zn.n, ModeKind::Derivative, std::vector<Complex>(z.size())};
  for (std::size_t k = 0; k < z.size(); ++k) {
    out.samples[k] = 2.0 * kernels.alpha * z[k] - n_sq * conv[k];
  }
  return out;
}

ModeTrajectory solve_mode_Zn_ode(int n, const DerivedKernelSet& kernels) {
  require_nonzero(n);
  kernels.grid.require_resolution(n);
  const double n_sq = static_cast<double>(n) * n;
  // Real coefficients: the real and imaginary parts decouple.
  std::vector<double> imag_forcing(kernels.stress_kernel.size());
  for (std::size_t k = 0; k < imag_forcing.size(); ++k) {
    imag_forcing[k] = n * kernels.stress_kernel[k];
  }
  const auto re = integrate_component(n_sq, kernels, 1.0, kernels.velocity_kernel);
  const auto im = integrate_component(n_sq, kernels, 0.0, imag_forcing);
  ModeTrajectory traj{n, ModeKind::BigZ, std::vector<Complex>(re.size())};
  for (std::size_t k = 0; k < re.size(); ++k) traj.samples[k] = {re[k], im[k]};
  return traj;
}

ModeTrajectory assemble_Zn_from_zn(const ModeTrajectory& zn,
                                   const DerivedKernelSet& kernels) {
  if (zn.kind != ModeKind::LittleZ) {
    throw std::invalid_argument("assemble_Zn_from_zn: expected a LittleZ trajectory");
  }
  const std::vector<double> z = zn.real_part();
  const auto hz = convolve(kernels.velocity_kernel, z, kernels.grid);
  const auto kz = convolve(kernels.stress_kernel, z, kernels.grid);
  ModeTrajectory out{zn.n, ModeKind::BigZ, std::vector<Complex>(z.size())};
  for (std::size_t k = 0; k < z.size(); ++k) {
    out.samples[k] = {z[k] + hz[k], zn.n * kz[k]};
  }
  return out;
}

ModeTrajectory oracle_exponential_mode(int n, const MemoryKernel& kernel,
                                       const TimeGrid& grid, int substeps) {
  require_nonzero(n);
  if (substeps <= 0) throw std::invalid_argument("oracle: substeps must be positive");
  if (kernel.family() == KernelFamily::Polynomial) {
    throw std::invalid_argument("oracle_exponential_mode: kernel is not an exponential sum");
  }
  const double alpha = kernel.alpha();
  // N_alpha(t) = sum_j c_j exp(-lambda_j t).
  std::vector<double> c{1.0};
  std::vector<double> lambda{-2.0 * alpha};
  for (const auto& term : kernel.terms()) {
    c[0] += term.a / term.b;
    c.push_back(-term.a / term.b);
    lambda.push_back(term.b - 2.0 * alpha);
  }
  const std::size_t m = c.size();
  const double n_sq = static_cast<double>(n) * n;

  // y = (z, u_0..u_{m-1}), u_j' = -lambda_j u_j + c_j z, z' = 2 alpha z - n^2 sum u_j.
  auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) {
    double mem = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      mem += y[1 + j];
      dy[1 + j] = -lambda[j] * y[1 + j] + c[j] * y[0];
    }
    dy[0] = 2.0 * alpha * y[0] - n_sq * mem;
  };

  const double dt = grid.step() / substeps;
  std::vector<double> y(m + 1, 0.0), k1(m + 1), k2(m + 1), k3(m + 1), k4(m + 1),
      tmp(m + 1);
  y[0] = 1.0;
  ModeTrajectory traj{n, ModeKind::LittleZ, std::vector<Complex>(grid.size())};
  traj.samples[0] = 1.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    for (int s = 0; s < substeps; ++s) {
      rhs(y, k1);
      for (std::size_t i = 0; i <= m; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
      rhs(tmp, k2);
      for (std::size_t i = 0; i <= m; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
      rhs(tmp, k3);
      for (std::size_t i = 0; i <= m; ++i) tmp[i] = y[i] + dt * k3[i];
      rhs(tmp, k4);
      for (std::size_t i = 0; i <= m; ++i) {
        y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
    }
    traj.samples[k] = y[0];
  }
  return traj;
}

}  // namespace viscostring
