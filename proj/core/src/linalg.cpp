#include "viscostring/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "viscostring/errors.hpp"

namespace viscostring {

using Complex = std::complex<double>;

double HermitianMatrix::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return worst;
}

std::vector<Complex> HermitianMatrix::multiply(std::span<const Complex> x) const {
  if (x.size() != dim_) throw std::invalid_argument("multiply: dimension mismatch");
  std::vector<Complex> y(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> jacobi_eigenvalues(HermitianMatrix a, const JacobiOptions& opts) {
  const std::size_t n = a.dim();
  auto frobenius = [&](bool off_only) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (off_only && i == j) continue;
        s += std::norm(a(i, j));
      }
    }
    return std::sqrt(s);
  };
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  const double scale = frobenius(false);

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    if (frobenius(true) <= opts.tolerance * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Unitary J = [[c, s e^{i phi}], [-s e^{-i phi}, c]] zeroes a(p, q)
        // in J^H A J, with a(p, q) = mag e^{i phi}.
        const Complex phase = a(p, q) / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a(p, p).real() - t * mag;
        const double aqq = a(q, q).real() + t * mag;

        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(phase) * akq;
          a(k, q) = s * phase * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^H A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app;
        a(q, q) = aqq;
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<Complex> cholesky_solve(const HermitianMatrix& a, std::span<const Complex> b) {
  const std::size_t n = a.dim();
  if (b.size() != n) throw std::invalid_argument("cholesky_solve: dimension mismatch");
  HermitianMatrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (!(diag > 0.0)) throw Error("cholesky_solve: matrix is not positive definite");
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i).real();
  }
  std::vector<Complex> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Complex s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * x[k];
    x[ii] = s / l(ii, ii).real();
  }
  return x;
}

}  // namespace viscostring
