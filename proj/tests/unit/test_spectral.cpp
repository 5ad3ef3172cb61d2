#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "viscostring/errors.hpp"
#include "viscostring/kernels.hpp"
#include "viscostring/spectral.hpp"
#include "viscostring/verify.hpp"
#include "viscostring/volterra.hpp"

namespace vs = viscostring;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

vs::MemoryKernel reference() { return vs::MemoryKernel::exponential_sum({{0.4, 1.0}}); }

vs::ControlSignal signal(const vs::TimeGrid& grid, double (*f)(double)) {
  std::vector<double> s(grid.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = f(grid.time(k));
  return vs::ControlSignal(grid, std::move(s));
}

}  // namespace

TEST(ModeParams, ElasticIndex) {
  const auto p = vs::mode_params(5, 0.0);
  EXPECT_EQ(p.beta, vs::Complex(5.0));
  EXPECT_EQ(p.mu, vs::Complex(1.0));
  EXPECT_TRUE(p.real_beta());
}

TEST(ModeParams, ReferenceAlpha) {
  const auto p = vs::mode_params(1, -0.2);
  EXPECT_NEAR(p.beta.real(), std::sqrt(0.96), 1e-15);
  EXPECT_NEAR(p.mu.real(), 1.0 / 0.96, 1e-15);
  EXPECT_NEAR(p.beta.real(), 0.979796, 1e-6);
  EXPECT_NEAR(p.mu.real(), 1.041667, 1e-6);
}

TEST(ModeParams, ExceptionalIndexThrows) {
  EXPECT_THROW(vs::mode_params(1, -1.0), vs::ExceptionalIndexError);
}

TEST(ModeParams, ComplexBranchHasNonnegativeRealPart) {
  const auto p = vs::mode_params(1, -2.0);
  EXPECT_FALSE(p.real_beta());
  EXPECT_GE(p.beta.real(), 0.0);
  EXPECT_NEAR(std::norm(p.beta), 3.0, 1e-14);
}

TEST(ControlSignal, ValidatesSamples) {
  const vs::TimeGrid grid(1.0, 4);
  EXPECT_THROW(vs::ControlSignal(grid, std::vector<double>(4, 0.0)), std::invalid_argument);
  std::vector<double> bad(5, 0.0);
  bad[2] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(vs::ControlSignal(grid, bad), std::invalid_argument);
}

TEST(ControlSignal, RenamingAndNorm) {
  const vs::TimeGrid grid(kTwoPi, 2048);
  const auto f = signal(grid, [](double t) { return std::cos(t); });
  EXPECT_NEAR(f.l2_norm(), std::sqrt(kPi), 1e-10);
  const auto renamed = f.renamed(-0.2);
  for (std::size_t k = 0; k < grid.size(); k += 111) {
    EXPECT_NEAR(renamed[k], std::exp(-0.4 * grid.time(k)) * f.samples[k], 1e-15);
  }
}

TEST(Simulate, ZeroControlGivesZeroState) {
  const vs::TimeGrid grid(kTwoPi, 1024);
  const auto d = vs::derive_kernels(reference(), grid);
  const auto family = vs::solve_little_z_family(d, {1, 8});
  const auto s = vs::simulate_coefficients(vs::ControlSignal::zero(grid), family, d);
  ASSERT_EQ(s.n_max(), 8);
  for (int i = 0; i < 8; ++i) {
    EXPECT_EQ(s.deformation[i], 0.0);
    EXPECT_EQ(s.velocity[i], 0.0);
    EXPECT_EQ(s.stress[i], 0.0);
    EXPECT_EQ(s.integrated_stress[i], 0.0);
  }
}

TEST(Simulate, ElasticCosineHitsFirstVelocity) {
  const vs::TimeGrid grid(kTwoPi, 4096);
  const auto d = vs::derive_kernels(vs::MemoryKernel::zero(), grid);
  const auto family = vs::solve_little_z_family(d, {1, 4});
  const auto f = signal(grid, [](double t) { return std::cos(t) / std::numbers::pi; });
  const auto s = vs::simulate_coefficients(f, family, d);
  EXPECT_NEAR(s.velocity[0], 1.0, 1e-3);
  EXPECT_NEAR(s.stress[0], 0.0, 1e-3);
  // Brute-force quadrature of int Z_1(s) f(T - s) ds with Z_1 = e^{is}.
  const int m = 200000;
  vs::Complex moment = 0.0;
  for (int i = 0; i < m; ++i) {
    const double t = (i + 0.5) * kTwoPi / m;
    moment += std::polar(1.0, t) * std::cos(kTwoPi - t) / kPi * (kTwoPi / m);
  }
  EXPECT_NEAR(std::abs(moment - vs::Complex(s.velocity[0], s.stress[0])), 0.0, 1e-3);
}

TEST(Simulate, ElasticHookeIdentity) {
  const vs::TimeGrid grid(kTwoPi, 1024);
  const auto d = vs::derive_kernels(vs::MemoryKernel::zero(), grid);
  const auto family = vs::solve_little_z_family(d, {1, 16});
  const auto s = vs::simulate_coefficients(
      signal(grid, [](double t) { return std::sin(3 * t) + t * t; }), family, d);
  for (int i = 0; i < 16; ++i) EXPECT_EQ(s.stress[i], s.deformation[i]);
}

TEST(Simulate, Linearity) {
  const vs::TimeGrid grid(kTwoPi, 1024);
  const auto d = vs::derive_kernels(reference(), grid);
  const auto family = vs::solve_little_z_family(d, {1, 8});
  const auto f1 = signal(grid, [](double t) { return std::sin(t); });
  const auto f2 = signal(grid, [](double t) { return std::exp(-t) * t; });
  std::vector<double> sum(grid.size());
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = f1.samples[k] + f2.samples[k];
  const auto a = vs::simulate_coefficients(f1, family, d);
  const auto b = vs::simulate_coefficients(f2, family, d);
  const auto c = vs::simulate_coefficients(vs::ControlSignal(grid, sum), family, d);
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(c.deformation[i], a.deformation[i] + b.deformation[i], 1e-12);
    EXPECT_NEAR(c.velocity[i], a.velocity[i] + b.velocity[i], 1e-12);
    EXPECT_NEAR(c.stress[i], a.stress[i] + b.stress[i], 1e-12);
    EXPECT_NEAR(c.integrated_stress[i], a.integrated_stress[i] + b.integrated_stress[i], 1e-12);
  }
}

TEST(Simulate, ComplexMomentMatchesRealSeries) {
  const vs::TimeGrid grid(kTwoPi, 4096);
  const auto d = vs::derive_kernels(reference(), grid);
  const auto family = vs::solve_little_z_family(d, {1, 8});
  const auto f = signal(grid, [](double t) { return std::cos(2 * t) + 0.5 * std::sin(t); });
  const auto s = vs::simulate_coefficients(f, family, d);
  const auto renamed = f.renamed(d.alpha);
  const double h = grid.step();
  for (int n = 1; n <= 8; ++n) {
    const auto big_z = vs::solve_mode_Zn_ode(n, d);
    const vs::Complex moment = vs::reversed_integral(renamed, big_z.samples, grid);
    EXPECT_LE(std::abs(moment - vs::Complex(s.velocity[n - 1], s.stress[n - 1])), 5 * h * h)
        << "n = " << n;
  }
}

TEST(Simulate, RejectsMismatchedFamily) {
  const vs::TimeGrid grid(kTwoPi, 512);
  const vs::TimeGrid other(kTwoPi, 256);
  const auto d = vs::derive_kernels(reference(), grid);
  const auto family = vs::solve_little_z_family(vs::derive_kernels(reference(), other), {1, 2});
  EXPECT_THROW(vs::simulate_coefficients(vs::ControlSignal::zero(grid), family, d),
               std::invalid_argument);
}

TEST(ReconstructField, ZeroStateIsZero) {
  const auto s = vs::SpectralState::zero(8, kTwoPi, -0.2);
  const std::vector<double> x{0.0, 1.0, kPi};
  for (auto which : {vs::FieldKind::Deformation, vs::FieldKind::Velocity, vs::FieldKind::Stress}) {
    for (double v : vs::reconstruct_field(s, which, x)) EXPECT_EQ(v, 0.0);
  }
}

TEST(ReconstructField, SingleDeformationMode) {
  auto s = vs::SpectralState::zero(4, kTwoPi, 0.0);
  s.deformation[0] = 1.0;
  EXPECT_DOUBLE_EQ(s.physical_scale, 2.0 / kPi);
  const std::vector<double> x{kPi / 2};
  EXPECT_NEAR(vs::reconstruct_field(s, vs::FieldKind::Deformation, x)[0], 2.0 / kPi, 1e-15);
}

TEST(ReconstructField, VelocityVanishesAtEnds) {
  auto s = vs::SpectralState::zero(6, kTwoPi, -0.2);
  for (int i = 0; i < 6; ++i) s.velocity[i] = 1.0 + i;
  const std::vector<double> x{0.0, kPi};
  for (double v : vs::reconstruct_field(s, vs::FieldKind::Velocity, x)) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(ReconstructField, RejectsOutOfRange) {
  const auto s = vs::SpectralState::zero(2, kTwoPi, 0.0);
  const std::vector<double> x{-0.1};
  EXPECT_THROW(vs::reconstruct_field(s, vs::FieldKind::Stress, x), std::invalid_argument);
  const std::vector<double> y{4.0};
  EXPECT_THROW(vs::reconstruct_field(s, vs::FieldKind::Stress, y), std::invalid_argument);
}

TEST(CoefficientNorms, ZeroState) {
  const auto n = vs::coefficient_norms(vs::SpectralState::zero(4, kTwoPi, -0.2));
  EXPECT_EQ(n.l2_deformation, 0.0);
  EXPECT_EQ(n.hminus1_velocity, 0.0);
  EXPECT_EQ(n.hminus1_stress, 0.0);
}

TEST(CoefficientNorms, BasisNormalizedEntries) {
  auto s = vs::SpectralState::zero(8, kTwoPi, 0.0);
  // Unit factor so raw values are already basis-normalized.
  s.physical_scale = std::sqrt(2.0 / kPi);
  s.velocity[6] = 3.0;
  s.stress[0] = 1.0;
  s.stress[1] = 1.0;
  const auto n = vs::coefficient_norms(s);
  EXPECT_NEAR(n.hminus1_velocity, 3.0, 1e-15);
  EXPECT_NEAR(n.hminus1_stress, std::sqrt(2.0), 1e-15);
  EXPECT_EQ(n.l2_deformation, 0.0);
}

TEST(CoefficientNorms, NormalizationMatchesFieldExpansion) {
  // Field = sum c_n sqrt(2/pi) sin nx, so the field L2 norm equals |c|.
  auto s = vs::SpectralState::zero(3, kTwoPi, -0.2);
  s.deformation = {0.5, -1.0, 2.0};
  const int m = 20000;
  std::vector<double> x(m + 1);
  for (int i = 0; i <= m; ++i) x[i] = kPi * i / m;
  const auto u = vs::reconstruct_field(s, vs::FieldKind::Deformation, x);
  double sq = 0.0;
  for (int i = 0; i <= m; ++i) sq += (i == 0 || i == m ? 0.5 : 1.0) * u[i] * u[i] * kPi / m;
  EXPECT_NEAR(std::sqrt(sq), vs::coefficient_norms(s).l2_deformation, 1e-10);
}
