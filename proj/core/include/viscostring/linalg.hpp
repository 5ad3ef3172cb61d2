#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace viscostring {

/// Dense square complex matrix, row-major. Used for Gram systems, which are
/// Hermitian positive semidefinite by construction.
class HermitianMatrix {
 public:
  using value_type = std::complex<double>;

  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  std::size_t dim() const { return dim_; }
  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  /// max |A - A^H|.
  double hermitian_defect() const;
  std::vector<value_type> multiply(std::span<const value_type> x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<value_type> data_;
};

struct JacobiOptions {
  int max_sweeps = 100;
  /// Stop when the off-diagonal Frobenius norm falls below tolerance * ||A||_F.
  double tolerance = 1e-15;
};

/// All eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, sorted
/// ascending.
std::vector<double> jacobi_eigenvalues(HermitianMatrix a, const JacobiOptions& opts = {});

/// Solves A x = b with A = L L^H. Throws Error if a pivot is not positive.
std::vector<std::complex<double>> cholesky_solve(const HermitianMatrix& a,
                                                 std::span<const std::complex<double>> b);

}  // namespace viscostring
