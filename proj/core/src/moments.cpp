#include "viscostring/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "viscostring/errors.hpp"
#include "viscostring/parallel.hpp"
#include "viscostring/summation.hpp"

namespace viscostring {
namespace {

// Real and imaginary parts stored separately for the pairwise dot products.
struct SplitSeries {
  std::vector<double> re;
  std::vector<double> im;
};

SplitSeries split(std::span<const Complex> z) {
  SplitSeries s{std::vector<double>(z.size()), std::vector<double>(z.size())};
  for (std::size_t k = 0; k < z.size(); ++k) {
    s.re[k] = z[k].real();
    s.im[k] = z[k].imag();
  }
  return s;
}

// Trapezoidal sum of a[k] * b[k] weighted h, h/2 at the ends.
double weighted_dot(const std::vector<double>& a, const std::vector<double>& b, double h) {
  const std::size_t last = a.size() - 1;
  const double interior =
      last > 1 ? pairwise_dot(std::span<const double>(a).subspan(1, last - 1),
                              std::span<const double>(b).subspan(1, last - 1))
               : 0.0;
  return h * (0.5 * (a[0] * b[0] + a[last] * b[last]) + interior);
}

// int_0^T x conj(y).
Complex inner(const SplitSeries& x, const SplitSeries& y, double h) {
  return {weighted_dot(x.re, y.re, h) + weighted_dot(x.im, y.im, h),
          weighted_dot(x.im, y.re, h) - weighted_dot(x.re, y.im, h)};
}

HermitianMatrix assemble_gram(const std::vector<SplitSeries>& series, double h) {
  const std::size_t dim = series.size();
  HermitianMatrix g(dim);
  parallel_for(dim, [&](std::size_t i) {
    for (std::size_t j = i; j < dim; ++j) g(i, j) = inner(series[i], series[j], h);
    g(i, i) = g(i, i).real();
  });
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < i; ++j) g(i, j) = std::conj(g(j, i));
  }
  return g;
}

void require_not_singular(double lambda_min, double lambda_max) {
  const double threshold =
      kNearSingularFactor * std::numeric_limits<double>::epsilon() * lambda_max;
  if (!(lambda_min > threshold)) throw NearSingularGramError(lambda_min, lambda_max);
}

double l2_norm(const std::vector<double>& samples, const TimeGrid& grid) {
  std::vector<double> sq(samples.size());
  for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = samples[k] * samples[k];
  return std::sqrt(trapezoid(sq, grid));
}

std::vector<double> physical_from_renamed(const std::vector<double>& renamed,
                                          double alpha, const TimeGrid& grid) {
  std::vector<double> out(renamed.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = std::exp(-2.0 * alpha * grid.time(k)) * renamed[k];
  }
  return out;
}

void check_positive_family(std::span<const ModeTrajectory> big_z, const TimeGrid& grid) {
  if (big_z.empty()) throw std::invalid_argument("gram: empty family");
  for (std::size_t i = 0; i < big_z.size(); ++i) {
    if (big_z[i].kind != ModeKind::BigZ || big_z[i].n != static_cast<int>(i) + 1 ||
        big_z[i].samples.size() != grid.size()) {
      throw std::invalid_argument("family must hold BigZ modes 1..n_max on the grid");
    }
  }
}

}  // namespace

MomentTarget::MomentTarget(std::vector<double> xi_in, std::vector<double> eta_in)
    : xi(std::move(xi_in)), eta(std::move(eta_in)) {
  if (xi.size() != eta.size()) {
    throw std::invalid_argument("MomentTarget: xi and eta lengths differ");
  }
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!std::isfinite(xi[i]) || !std::isfinite(eta[i])) {
      throw std::invalid_argument("MomentTarget: non-finite entry");
    }
  }
}

Complex MomentTarget::gamma(int n) const {
  const int m = std::abs(n);
  if (m == 0 || m > n_max()) throw std::out_of_range("MomentTarget: index out of range");
  const Complex g(xi[m - 1], eta[m - 1]);
  return n > 0 ? g : std::conj(g);
}

double MomentTarget::norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) s += xi[i] * xi[i] + eta[i] * eta[i];
  return std::sqrt(s);
}

MomentTarget MomentTarget::zero(int n_max) {
  return MomentTarget(std::vector<double>(n_max, 0.0), std::vector<double>(n_max, 0.0));
}

MomentTarget MomentTarget::random_unit(int n_max, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> xi(n_max), eta(n_max);
  for (int i = 0; i < n_max; ++i) {
    xi[i] = 2.0 * rng.uniform() - 1.0;
    eta[i] = 2.0 * rng.uniform() - 1.0;
  }
  MomentTarget t(std::move(xi), std::move(eta));
  const double norm = t.norm();
  if (norm > 0.0) {
    for (int i = 0; i < n_max; ++i) {
      t.xi[i] /= norm;
      t.eta[i] /= norm;
    }
  }
  return t;
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

ModeFamily build_family(const DerivedKernelSet& kernels, int n_max) {
  if (n_max <= 0) throw std::invalid_argument("build_family: n_max must be positive");
  kernels.grid.require_resolution(n_max);
  ModeFamily family;
  family.little_z.resize(n_max);
  family.big_z.resize(n_max);
  std::vector<double> deviation(n_max, 0.0);
  parallel_for(static_cast<std::size_t>(n_max), [&](std::size_t i) {
    const int n = static_cast<int>(i) + 1;
    family.little_z[i] = solve_mode_zn(n, kernels);
    family.big_z[i] = solve_mode_Zn_ode(n, kernels);
    const auto assembled = assemble_Zn_from_zn(family.little_z[i], kernels);
    double worst = 0.0;
    for (std::size_t k = 0; k < assembled.samples.size(); ++k) {
      worst = std::max(worst, std::abs(assembled.samples[k] - family.big_z[i].samples[k]));
    }
    deviation[i] = worst;
  });
  family.cross_check_deviation = *std::max_element(deviation.begin(), deviation.end());
  const double h = kernels.grid.step();
  if (family.cross_check_deviation > 100.0 * h * h) {
    throw Error("build_family: ODE and assembled Z_n differ by " +
                std::to_string(family.cross_check_deviation) + " > 100 h^2");
  }
  return family;
}

double GramSystem::condition() const {
  return lambda_min > 0.0 ? lambda_max / lambda_min
                          : std::numeric_limits<double>::infinity();
}

GramSystem gram(std::span<const ModeTrajectory> big_z, const TimeGrid& grid) {
  check_positive_family(big_z, grid);
  const int n_max = static_cast<int>(big_z.size());
  GramSystem system{grid};
  for (int n = 1; n <= n_max; ++n) system.indices.push_back(n);
  for (int n = 1; n <= n_max; ++n) system.indices.push_back(-n);
  system.family.assign(big_z.begin(), big_z.end());
  for (const auto& z : big_z) {
    ModeTrajectory conj{-z.n, ModeKind::BigZ, z.samples};
    for (auto& v : conj.samples) v = std::conj(v);
    system.family.push_back(std::move(conj));
  }
  std::vector<SplitSeries> series;
  series.reserve(system.family.size());
  for (const auto& z : system.family) series.push_back(split(z.samples));
  system.matrix = assemble_gram(series, grid.step());
  const auto eig = jacobi_eigenvalues(system.matrix);
  system.lambda_min = eig.front();
  system.lambda_max = eig.back();
  return system;
}

SynthesisReport synthesize_control(const GramSystem& system, const MomentTarget& target,
                                   double alpha) {
  if (target.n_max() != system.n_max()) {
    throw std::invalid_argument("synthesize_control: target size differs from family");
  }
  require_not_singular(system.lambda_min, system.lambda_max);
  const TimeGrid& grid = system.grid;
  const std::size_t dim = system.indices.size();

  std::vector<Complex> gamma(dim);
  for (std::size_t i = 0; i < dim; ++i) gamma[i] = target.gamma(system.indices[i]);
  const std::vector<Complex> a = cholesky_solve(system.matrix, gamma);

  // f(T - s) = sum_m a_m conj(Z_m(s)), sampled at t_k = T - s_{K-k}.
  const std::size_t size = grid.size();
  const std::size_t last = size - 1;
  std::vector<Complex> f(size, 0.0);
  for (std::size_t m = 0; m < dim; ++m) {
    const auto& z = system.family[m].samples;
    for (std::size_t k = 0; k < size; ++k) f[k] += a[m] * std::conj(z[last - k]);
  }
  std::vector<double> renamed(size), imag(size);
  for (std::size_t k = 0; k < size; ++k) {
    renamed[k] = f[k].real();
    imag[k] = f[k].imag();
  }

  SynthesisReport report{ControlSignal(grid, physical_from_renamed(renamed, alpha, grid))};
  report.renamed_control = renamed;
  report.coefficients = a;
  report.renamed_l2_norm = l2_norm(renamed, grid);
  report.control_l2_norm = report.control.l2_norm();
  const double imag_norm = l2_norm(imag, grid);
  report.imaginary_ratio =
      report.renamed_l2_norm > 0.0 ? imag_norm / report.renamed_l2_norm : imag_norm;
  const auto ga = system.matrix.multiply(a);
  Complex energy = 0.0;
  for (std::size_t i = 0; i < dim; ++i) energy += std::conj(a[i]) * ga[i];
  report.energy = energy.real();
  report.lambda_min = system.lambda_min;
  report.lambda_max = system.lambda_max;
  report.condition = system.condition();
  report.short_horizon = grid.horizon() < 2.0 * std::numbers::pi * (1.0 - 1e-12);

  double worst = 0.0;
  for (int n = 1; n <= system.n_max(); ++n) {
    const auto& z = system.family[n - 1].samples;
    const Complex achieved = reversed_integral(renamed, z, grid);
    const Complex goal = target.gamma(n);
    report.indices.push_back(n);
    report.targets.push_back(goal);
    report.achieved.push_back(achieved);
    report.residuals.push_back(achieved - goal);
    worst = std::max(worst, std::abs(achieved - goal));
  }
  const double scale = target.norm();
  report.max_relative_residual = scale > 0.0 ? worst / scale : worst;
  return report;
}

SynthesisReport finite_pair_control(const DerivedKernelSet& kernels,
                                    std::span<const double> c, std::span<const double> d) {
  if (c.size() != d.size() || c.empty()) {
    throw std::invalid_argument("finite_pair_control: c and d must be nonempty, same length");
  }
  const int n_f = static_cast<int>(c.size());
  const TimeGrid& grid = kernels.grid;
  grid.require_resolution(n_f);

  const bool elastic = std::all_of(kernels.stress_correction.begin(),
                                   kernels.stress_correction.end(),
                                   [](double v) { return v == 0.0; });
  if (elastic) {
    for (int i = 0; i < n_f; ++i) {
      const double tol = 1e-12 * std::max({1.0, std::abs(c[i]), std::abs(d[i])});
      if (std::abs(c[i] - d[i]) > tol) throw ElasticDegeneracyError(i + 1);
    }
  }

  std::vector<ModeTrajectory> z_family(n_f);
  std::vector<std::vector<double>> deform(n_f), stress_gap(n_f);
  parallel_for(static_cast<std::size_t>(n_f), [&](std::size_t i) {
    const double n = static_cast<double>(i + 1);
    z_family[i] = solve_mode_zn(static_cast<int>(i) + 1, kernels);
    const auto z = z_family[i].real_part();
    deform[i] = convolve(kernels.scaled, z, grid);
    stress_gap[i] = convolve(kernels.stress_correction, z, grid);
    for (auto& v : deform[i]) v *= n;
    for (auto& v : stress_gap[i]) v *= n;
  });

  // Moment functions and their real targets.
  std::vector<std::vector<double>> basis;
  std::vector<double> rhs;
  for (int i = 0; i < n_f; ++i) {
    basis.push_back(deform[i]);
    rhs.push_back(c[i]);
  }
  if (!elastic) {
    for (int i = 0; i < n_f; ++i) {
      basis.push_back(stress_gap[i]);
      rhs.push_back(d[i] - c[i]);
    }
  }

  // Minimal-norm solution of B^T g = t with g = sqrt(w) f and
  // B(k, j) = sqrt(w_k) basis_j(T - t_k), from the thin QR factors of B.
  const std::size_t rows = grid.size();
  const std::size_t last = rows - 1;
  const auto cols = static_cast<Eigen::Index>(basis.size());
  std::vector<double> sqrt_w(rows, std::sqrt(grid.step()));
  sqrt_w.front() = sqrt_w.back() = std::sqrt(0.5 * grid.step());
  Eigen::MatrixXd b(static_cast<Eigen::Index>(rows), cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (std::size_t k = 0; k < rows; ++k) {
      b(static_cast<Eigen::Index>(k), j) = sqrt_w[k] * basis[j][last - k];
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
  const Eigen::MatrixXd r =
      qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  const Eigen::VectorXd sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(r).singularValues();
  const double lambda_max = sigma(0) * sigma(0);
  const double lambda_min = sigma(cols - 1) * sigma(cols - 1);
  const double sigma_threshold =
      kNearSingularFactor * std::numeric_limits<double>::epsilon() * sigma(0);
  if (!(sigma(cols - 1) > sigma_threshold)) throw NearSingularGramError(lambda_min, lambda_max);

  const Eigen::VectorXd t = Eigen::Map<const Eigen::VectorXd>(rhs.data(), cols);
  const Eigen::VectorXd y =
      r.transpose().triangularView<Eigen::Lower>().solve(t);
  Eigen::VectorXd padded_y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows));
  padded_y.head(cols) = y;
  const Eigen::VectorXd g = qr.householderQ() * padded_y;
  const Eigen::VectorXd a = r.triangularView<Eigen::Upper>().solve(y);

  std::vector<double> renamed(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    renamed[k] = g(static_cast<Eigen::Index>(k)) / sqrt_w[k];
  }

  SynthesisReport report{
      ControlSignal(grid, physical_from_renamed(renamed, kernels.alpha, grid))};
  report.renamed_control = renamed;
  for (Eigen::Index j = 0; j < cols; ++j) report.coefficients.emplace_back(a(j), 0.0);
  report.renamed_l2_norm = l2_norm(renamed, grid);
  report.control_l2_norm = report.control.l2_norm();
  report.energy = y.squaredNorm();
  report.lambda_min = lambda_min;
  report.lambda_max = lambda_max;
  report.condition = lambda_min > 0.0 ? lambda_max / lambda_min
                                      : std::numeric_limits<double>::infinity();
  report.short_horizon = grid.horizon() < 2.0 * std::numbers::pi * (1.0 - 1e-12);

  const SpectralState state = simulate_coefficients(report.control, z_family, kernels);
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i < n_f; ++i) {
    const Complex goal(c[i], d[i]);
    const Complex achieved(state.deformation[i], state.stress[i]);
    report.indices.push_back(i + 1);
    report.targets.push_back(goal);
    report.achieved.push_back(achieved);
    report.residuals.push_back(achieved - goal);
    worst = std::max(worst, std::abs(achieved - goal));
    scale += std::norm(goal);
  }
  scale = std::sqrt(scale);
  report.max_relative_residual = scale > 0.0 ? worst / scale : worst;
  return report;
}

FrameBoundsRow normalized_gram_extremes(std::span<const ModeTrajectory> big_z,
                                        const TimeGrid& grid, int n_max) {
  if (n_max <= 0 || n_max > static_cast<int>(big_z.size())) {
    throw std::invalid_argument("normalized_gram_extremes: n_max outside family");
  }
  GramSystem system = gram(big_z.first(n_max), grid);
  HermitianMatrix& g = system.matrix;
  const std::size_t dim = g.dim();
  std::vector<double> inv_norm(dim);
  for (std::size_t i = 0; i < dim; ++i) inv_norm[i] = 1.0 / std::sqrt(g(i, i).real());
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) g(i, j) *= inv_norm[i] * inv_norm[j];
    g(i, i) = 1.0;
  }
  const auto eig = jacobi_eigenvalues(g);
  return {n_max, eig.front(), eig.back()};
}

std::vector<FrameBoundsRow> frame_bounds(const DerivedKernelSet& kernels,
                                         std::vector<int> n_max_values) {
  if (n_max_values.empty()) return {};
  const int top = *std::max_element(n_max_values.begin(), n_max_values.end());
  const ModeFamily family = build_family(kernels, top);
  std::vector<FrameBoundsRow> rows;
  for (int n_max : n_max_values) {
    rows.push_back(normalized_gram_extremes(family.big_z, kernels.grid, n_max));
  }
  return rows;
}

ClosenessReport quadratic_closeness(std::span<const ModeTrajectory> big_z,
                                    const DerivedKernelSet& kernels) {
  const TimeGrid& grid = kernels.grid;
  check_positive_family(big_z, grid);
  const int n_max = static_cast<int>(big_z.size());
  std::vector<ModeParams> params;
  for (int n = 1; n <= n_max; ++n) {
    params.push_back(mode_params(n, kernels.alpha));
    if (!params.back().real_beta()) throw ExceptionalIndexError(n, kernels.alpha, true);
  }

  ClosenessReport report;
  report.distance_sq.assign(2 * n_max, 0.0);
  for (int n = 1; n <= n_max; ++n) report.indices.push_back(n);
  for (int n = 1; n <= n_max; ++n) report.indices.push_back(-n);

  parallel_for(static_cast<std::size_t>(2 * n_max), [&](std::size_t slot) {
    const int n = report.indices[slot];
    const int m = std::abs(n);
    const double beta = (n > 0 ? 1.0 : -1.0) * params[m - 1].beta.real();
    const auto& z = big_z[m - 1].samples;
    std::vector<double> sq(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
      const double t = grid.time(k);
      const Complex zk = n > 0 ? z[k] : std::conj(z[k]);
      const Complex ref = std::exp(kernels.alpha * t) * Complex(std::cos(beta * t),
                                                                std::sin(beta * t));
      sq[k] = std::norm(zk - ref);
    }
    report.distance_sq[slot] = trapezoid(sq, grid);
  });

  for (std::size_t i = 0; i < report.indices.size(); ++i) {
    const double n = report.indices[i];
    report.scaled.push_back(n * n * report.distance_sq[i]);
  }
  double running = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    running += report.distance_sq[n - 1] + report.distance_sq[n_max + n - 1];
    report.partial_sums.push_back(running);
  }
  for (double p : report.partial_sums) report.tail.push_back(running - p);
  return report;
}

}  // namespace viscostring
