#include "viscostring/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "viscostring/errors.hpp"
#include "viscostring/summation.hpp"
#include "viscostring/volterra.hpp"

namespace viscostring {

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Zero:
      return "zero";
    case KernelFamily::ExponentialSum:
      return "exponential_sum";
    case KernelFamily::Polynomial:
      return "polynomial";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  std::string key;
  for (char c : name) {
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "zero") return KernelFamily::Zero;
  if (key == "exponential_sum" || key == "exponentialsum" || key == "exponential") {
    return KernelFamily::ExponentialSum;
  }
  if (key == "polynomial") return KernelFamily::Polynomial;
  throw std::invalid_argument("unknown kernel family '" + name + "'");
}

MemoryKernel MemoryKernel::zero() { return MemoryKernel(); }

MemoryKernel MemoryKernel::exponential_sum(std::vector<ExponentialTerm> terms) {
  for (const auto& term : terms) {
    if (!std::isfinite(term.a) || !std::isfinite(term.b)) {
      throw std::invalid_argument("exponential_sum: non-finite coefficient");
    }
    if (!(term.b > 0.0)) {
      throw std::invalid_argument("exponential_sum: every rate b_i must be > 0");
    }
  }
  MemoryKernel k;
  k.family_ = KernelFamily::ExponentialSum;
  k.terms_ = std::move(terms);
  return k;
}

MemoryKernel MemoryKernel::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  if (coefficients.size() > 5) {
    throw std::invalid_argument("polynomial kernel: degree must be <= 4");
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("polynomial kernel: non-finite coefficient");
    }
  }
  MemoryKernel k;
  k.family_ = KernelFamily::Polynomial;
  k.coefficients_ = std::move(coefficients);
  return k;
}

MemoryKernel MemoryKernel::from_coefficients(
    KernelFamily family, const std::vector<double>& coefficients) {
  switch (family) {
    case KernelFamily::Zero:
      if (!coefficients.empty()) {
        throw std::invalid_argument("zero kernel takes no coefficients");
      }
      return zero();
    case KernelFamily::ExponentialSum: {
      if (coefficients.size() % 2 != 0) {
        throw std::invalid_argument(
            "exponential_sum expects (a, b) pairs: odd coefficient count");
      }
      std::vector<ExponentialTerm> terms;
      for (std::size_t i = 0; i < coefficients.size(); i += 2) {
        terms.push_back({coefficients[i], coefficients[i + 1]});
      }
      return exponential_sum(std::move(terms));
    }
    case KernelFamily::Polynomial:
      return polynomial(coefficients);
  }
  throw std::invalid_argument("unknown kernel family");
}

std::vector<double> MemoryKernel::flat_coefficients() const {
  if (family_ == KernelFamily::ExponentialSum) {
    std::vector<double> flat;
    for (const auto& t : terms_) {
      flat.push_back(t.a);
      flat.push_back(t.b);
    }
    return flat;
  }
  return coefficients_;
}

double MemoryKernel::derivative(double t, int order) const {
  if (order < 0 || order > 2) {
    throw std::invalid_argument("MemoryKernel::derivative: order must be 0..2");
  }
  switch (family_) {
    case KernelFamily::Zero:
      return 0.0;
    case KernelFamily::ExponentialSum: {
      double sum = 0.0;
      for (const auto& term : terms_) {
        const double sign = (order == 1) ? -1.0 : 1.0;
        sum += sign * term.a * std::pow(term.b, order) * std::exp(-term.b * t);
      }
      return sum;
    }
    case KernelFamily::Polynomial: {
      // Horner on the differentiated coefficients.
      double sum = 0.0;
      const int degree = static_cast<int>(coefficients_.size()) - 1;
      for (int k = degree; k >= order; --k) {
        double factor = 1.0;
        for (int j = 0; j < order; ++j) factor *= static_cast<double>(k - j);
        sum = sum * t + factor * coefficients_[k];
      }
      return sum;
    }
  }
  return 0.0;
}

double MemoryKernel::relaxation(double t) const {
  switch (family_) {
    case KernelFamily::Zero:
      return 1.0;
    case KernelFamily::ExponentialSum: {
      double sum = 1.0;
      for (const auto& term : terms_) {
        sum += term.a / term.b * -std::expm1(-term.b * t);
      }
      return sum;
    }
    case KernelFamily::Polynomial: {
      double sum = 0.0;
      for (int k = static_cast<int>(coefficients_.size()) - 1; k >= 0; --k) {
        sum = sum * t + coefficients_[k] / static_cast<double>(k + 1);
      }
      return 1.0 + sum * t;
    }
  }
  return 1.0;
}

bool MemoryKernel::is_identically_zero() const {
  switch (family_) {
    case KernelFamily::Zero:
      return true;
    case KernelFamily::ExponentialSum:
      return std::all_of(terms_.begin(), terms_.end(),
                         [](const ExponentialTerm& t) { return t.a == 0.0; });
    case KernelFamily::Polynomial:
      return std::all_of(coefficients_.begin(), coefficients_.end(),
                         [](double c) { return c == 0.0; });
  }
  return false;
}

double scaled_relaxation(const MemoryKernel& kernel, double t, int order) {
  if (order < 0 || order > 3) {
    throw std::invalid_argument("scaled_relaxation: order must be 0..3");
  }
  // Leibniz: (e^{at} N)^{(k)} = e^{at} sum_j C(k,j) a^{k-j} N^{(j)},
  // with N' = M, N'' = M', N''' = M''.
  static constexpr int kBinomial[4][4] = {
      {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  const double a = 2.0 * kernel.alpha();
  double derivs[4];
  derivs[0] = kernel.relaxation(t);
  for (int j = 1; j <= order; ++j) derivs[j] = kernel.derivative(t, j - 1);
  double sum = 0.0;
  for (int j = 0; j <= order; ++j) {
    sum += kBinomial[order][j] * std::pow(a, order - j) * derivs[j];
  }
  return std::exp(a * t) * sum;
}

DerivedKernelSet derive_kernels(const MemoryKernel& kernel, const TimeGrid& grid) {
  DerivedKernelSet set{kernel, grid};
  const std::size_t size = grid.size();
  const double alpha = kernel.alpha();
  set.alpha = alpha;

  auto sample = [&](auto&& fn) {
    std::vector<double> v(size);
    for (std::size_t k = 0; k < size; ++k) v[k] = fn(grid.time(k));
    return v;
  };

  set.relaxation = sample([&](double t) { return kernel.relaxation(t); });
  set.scaled = sample([&](double t) { return scaled_relaxation(kernel, t, 0); });
  set.scaled_d1 = sample([&](double t) { return scaled_relaxation(kernel, t, 1); });
  set.scaled_d2 = sample([&](double t) { return scaled_relaxation(kernel, t, 2); });
  const std::vector<double> scaled_d3 =
      sample([&](double t) { return scaled_relaxation(kernel, t, 3); });
  set.scaled_memory =
      sample([&](double t) { return std::exp(2.0 * alpha * t) * kernel(t); });

  set.velocity_kernel.resize(size);
  set.n0.resize(size);
  set.n1.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    set.velocity_kernel[k] = set.scaled_d1[k] - 2.0 * alpha * set.scaled[k];
    set.n0[k] = set.scaled_d2[k] - alpha * set.scaled_d1[k];
    set.n1[k] = 2.0 * alpha * set.scaled_d2[k] - alpha * alpha * set.scaled_d1[k] -
                scaled_d3[k];
  }
  set.n0_at_zero = scaled_relaxation(kernel, 0.0, 2) -
                   alpha * scaled_relaxation(kernel, 0.0, 1);

  set.stress_correction = convolve(set.scaled, set.scaled_memory, grid);
  set.stress_kernel.resize(size);
  for (std::size_t k = 0; k < size; ++k) {
    set.stress_kernel[k] = set.scaled[k] + set.stress_correction[k];
  }

  // Resolvent of -N_alpha': L_k (1 + h/2 N'_0) =
  //   -N'_k - h [ N'_k L_0 / 2 + sum_{j=1}^{k-1} N'_{k-j} L_j ].
  const double h = grid.step();
  const auto& d1 = set.scaled_d1;
  std::vector<double> d1_reversed(d1.rbegin(), d1.rend());
  std::vector<double>& L = set.resolvent;
  L.assign(size, 0.0);
  const double diag = 1.0 + 0.5 * h * d1[0];
  L[0] = -d1[0] / diag;
  const std::size_t last = size - 1;
  for (std::size_t k = 1; k < size; ++k) {
    // d1[k - j] for j = 1..k-1 is d1_reversed[last - k + j].
    const double interior =
        k > 1 ? pairwise_dot(std::span<const double>(d1_reversed).subspan(last - k + 1, k - 1),
                             std::span<const double>(L).subspan(1, k - 1))
              : 0.0;
    L[k] = (-d1[k] - h * (0.5 * d1[k] * L[0] + interior)) / diag;
  }
  return set;
}

ExceptionalCheck exceptional_index_check(const MemoryKernel& kernel, int n_max) {
  ExceptionalCheck check;
  check.alpha = kernel.alpha();
  const double alpha_sq = check.alpha * check.alpha;
  for (int n = 1; n <= n_max; ++n) {
    const double n_sq = static_cast<double>(n) * n;
    if (std::abs(alpha_sq - n_sq) <= 1e-12 * n_sq) {
      throw ExceptionalIndexError(n, check.alpha);
    }
  }
  check.non_real_beta = alpha_sq > 1.0;
  return check;
}

}  // namespace viscostring
