#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "viscostring/errors.hpp"
#include "viscostring/linalg.hpp"
#include "viscostring/moments.hpp"

namespace vs = viscostring;
using Complex = std::complex<double>;

namespace {

vs::HermitianMatrix random_hermitian(std::size_t dim, std::uint64_t seed, double shift) {
  vs::SplitMix64 rng(seed);
  vs::HermitianMatrix a(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    a(i, i) = 2.0 * rng.uniform() - 1.0 + shift;
    for (std::size_t j = i + 1; j < dim; ++j) {
      a(i, j) = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
      a(j, i) = std::conj(a(i, j));
    }
  }
  return a;
}

Eigen::MatrixXcd to_eigen(const vs::HermitianMatrix& a) {
  Eigen::MatrixXcd m(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  }
  return m;
}

}  // namespace

TEST(Jacobi, MatchesEigenSolver) {
  for (std::size_t dim : {1u, 2u, 7u, 16u, 40u}) {
    const auto a = random_hermitian(dim, 100 + dim, 0.0);
    const auto ours = vs::jacobi_eigenvalues(a);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(a),
                                                                 Eigen::EigenvaluesOnly);
    ASSERT_EQ(ours.size(), dim);
    for (std::size_t i = 0; i < dim; ++i) {
      EXPECT_NEAR(ours[i], oracle.eigenvalues()(static_cast<Eigen::Index>(i)),
                  1e-12 * std::sqrt(static_cast<double>(dim)) * 4)
          << "dim " << dim << " index " << i;
    }
  }
}

TEST(Jacobi, DiagonalAndSorted) {
  vs::HermitianMatrix a(3);
  a(0, 0) = 3.0;
  a(1, 1) = -1.0;
  a(2, 2) = 2.0;
  EXPECT_EQ(vs::jacobi_eigenvalues(a), (std::vector<double>{-1.0, 2.0, 3.0}));
}

TEST(Jacobi, TwoByTwoClosedForm) {
  vs::HermitianMatrix a(2);
  a(0, 0) = 2.0;
  a(1, 1) = 2.0;
  a(0, 1) = Complex(0.0, 1.0);
  a(1, 0) = Complex(0.0, -1.0);
  const auto ev = vs::jacobi_eigenvalues(a);
  EXPECT_NEAR(ev[0], 1.0, 1e-15);
  EXPECT_NEAR(ev[1], 3.0, 1e-15);
}

TEST(Cholesky, SolvesPositiveDefiniteSystem) {
  const std::size_t dim = 12;
  const auto a = random_hermitian(dim, 7, 2.0 * dim);
  std::vector<Complex> x_true(dim);
  for (std::size_t i = 0; i < dim; ++i) x_true[i] = {1.0 + i, -0.5 * i};
  const auto b = a.multiply(x_true);
  const auto x = vs::cholesky_solve(a, b);
  for (std::size_t i = 0; i < dim; ++i) EXPECT_NEAR(std::abs(x[i] - x_true[i]), 0.0, 1e-12);
}

TEST(Cholesky, MatchesEigenLlt) {
  const std::size_t dim = 9;
  const auto a = random_hermitian(dim, 3, 2.0 * dim);
  std::vector<Complex> b(dim);
  Eigen::VectorXcd eb(dim);
  for (std::size_t i = 0; i < dim; ++i) eb(i) = b[i] = {std::sin(1.0 + i), std::cos(2.0 * i)};
  const auto x = vs::cholesky_solve(a, b);
  const Eigen::VectorXcd oracle = to_eigen(a).llt().solve(eb);
  for (std::size_t i = 0; i < dim; ++i) {
    EXPECT_NEAR(std::abs(x[i] - oracle(static_cast<Eigen::Index>(i))), 0.0, 1e-13);
  }
}

TEST(Cholesky, RejectsIndefinite) {
  vs::HermitianMatrix a(2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  const std::vector<Complex> b{1.0, 1.0};
  EXPECT_THROW(vs::cholesky_solve(a, b), vs::Error);
}

TEST(HermitianMatrix, DefectAndMultiply) {
  auto a = random_hermitian(5, 11, 0.0);
  EXPECT_EQ(a.hermitian_defect(), 0.0);
  a(0, 1) += Complex(0.0, 1e-3);
  EXPECT_NEAR(a.hermitian_defect(), 1e-3, 1e-15);
  vs::HermitianMatrix id(3);
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1.0;
  const std::vector<Complex> v{1.0, Complex(0, 2), -3.0};
  EXPECT_EQ(id.multiply(v), v);
}
