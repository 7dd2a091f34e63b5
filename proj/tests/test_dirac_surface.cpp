#include "spinsurf/dirac_surface.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace spinsurf;

namespace {

// Exact exponential solution of the selected system with constant H.
// Both pairs use exp(k w + m wb) where w is the variable the chosen d/dz
// annihilates the conjugate of.
ComponentField plane_wave(const Grid& g, DiracSystem sys, double alpha, cplx H, cplx k1, cplx k2, Wirtinger w) {
  const cplx i(0, 1);
  if (sys == DiracSystem::conjugated_alpha0) alpha = 0;
  cplx m, pl;
  if (sys == DiracSystem::direct) {
    m = alpha - i * H;
    pl = alpha + i * H;
  } else {
    m = -alpha + H;
    pl = -alpha - H;
  }
  cplx mu1 = m * pl / k1, mu2 = m * pl / k2;
  auto wz = [w](double x, double y) { return w == Wirtinger::standard ? cplx(x, y) : cplx(x, -y); };
  auto e = [&](cplx k, cplx mu) {
    return [=](double x, double y) { return std::exp(k * wz(x, y) + mu * std::conj(wz(x, y))); };
  };
  auto E1 = e(k1, mu1), E2 = e(k2, mu2);
  ComponentField f{g, {}};
  if (sys == DiracSystem::direct) {
    f.phi[0] = sample(g, E1);
    f.phi[3] = sample(g, [&](double x, double y) { return k1 / m * E1(x, y); });
    f.phi[2] = sample(g, E2);
    f.phi[1] = sample(g, [&](double x, double y) { return k2 / m * E2(x, y); });
  } else {
    f.phi[0] = conj(sample(g, E1));
    f.phi[3] = sample(g, [&](double x, double y) { return k1 / m * E1(x, y); });
    f.phi[2] = conj(sample(g, E2));
    f.phi[1] = sample(g, [&](double x, double y) { return -k2 / m * E2(x, y); });
  }
  return f;
}

Grid unit_grid(double h) {
  std::size_t n = std::size_t(std::lround(1.0 / h)) + 1;
  return {0, 0, h, n, n};
}

CField random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return sample(g, [&](double, double) { return cplx(n(rng), n(rng)); });
}

}  // namespace

TEST(EpsilonTable, PrintedList) {
  EXPECT_EQ(epsilon_for(ImmersionCase::S11_M13), cplx(0, 1));
  EXPECT_EQ(epsilon_for(ImmersionCase::S02_M13), cplx(1));
  EXPECT_EQ(epsilon_for(ImmersionCase::S11_M22), cplx(1));
  EXPECT_EQ(epsilon_for(ImmersionCase::S02_M04), cplx(0, 1));
}

TEST(EpsilonTable, AgreesWithZetaSquares) {
  for (auto c : all_immersion_cases()) {
    auto d = find_zeta_units(c);
    bool is_i = epsilon_for(c) == cplx(0, 1);
    EXPECT_EQ(is_i, d.squares.z12 == -1) << to_string(c);
    EXPECT_EQ(is_i, d.eps_is_i) << to_string(c);
  }
}

TEST(DiracApply, ParallelAndMinimalCases) {
  std::mt19937_64 rng(61);
  Grid g{0, 0, 0.1, 6, 5};
  SurfaceSpinorField f{g, random_field(g, rng), random_field(g, rng)};
  for (auto c : all_immersion_cases()) {
    // parallel spinor on a minimal surface
    auto [a, b] = dirac_apply(f, DiracParams{}, c);
    EXPECT_EQ(max_abs(a), 0.0);
    EXPECT_EQ(max_abs(b), 0.0);
    // minimal surface: D = alpha id
    DiracParams p{0.7, 0.7, 1, 1, {}, 0};
    auto [ap, am] = dirac_apply(f, p, c);
    for (std::size_t k = 0; k < g.size(); ++k) {
      EXPECT_NEAR(std::abs(ap.v[k] - 1.4 * f.minus.v[k]), 0, 1e-15);
      EXPECT_NEAR(std::abs(am.v[k] - 1.4 * f.plus.v[k]), 0, 1e-15);
    }
    // homogeneous time-like case: alpha = beta = 0 for any H
    DiracParams q{0.3, 0.3, 1, -1, random_field(g, rng), 0};
    EXPECT_EQ(q.alpha(), 0.0);
    EXPECT_EQ(q.beta(), 0.0);
    auto [hp, hm] = dirac_apply(f, q, c);
    EXPECT_EQ(max_abs(hp), 0.0);
    EXPECT_EQ(max_abs(hm), 0.0);
  }
}

TEST(DiracApply, MeanCurvatureTerm) {
  Grid g{0, 0, 1, 3, 3};
  SurfaceSpinorField f{g, CField(g, 1.0), CField(g, 2.0)};
  DiracParams p{0, 0, 1, 1, {}, 0.5};
  auto [dp, dm] = dirac_apply(f, p, ImmersionCase::S20_M40);
  // (0 - i * 2 * 0.5 / 2) * 2 and (0 + i/2) * 1
  EXPECT_EQ(dp(1, 1), cplx(0, -1));
  EXPECT_EQ(dm(1, 1), cplx(0, 0.5));
  SurfaceSpinorField bad{g, CField(2, 2), CField(g)};
  EXPECT_THROW(dirac_apply(bad, p, ImmersionCase::S20_M40), std::invalid_argument);
}

TEST(TwiddleHat, Examples) {
  EXPECT_DOUBLE_EQ(twiddle_hat_difference(2, 1, 1), 2);
  EXPECT_DOUBLE_EQ(twiddle_hat_difference(3.7, 1, -1), 0);
  EXPECT_DOUBLE_EQ(twiddle_hat_difference(1, -1, -1), -1);
}

TEST(CompactField, EigenvectorOfTwoComponentModel) {
  for (int n = -3; n <= 3; ++n) EXPECT_TRUE(compact_field_check(QComplex(Rational(n, 2), Rational(1, 3))));
}

TEST(Residual, ConstantFieldVanishes) {
  Grid g{0, 0, 0.1, 5, 5};
  ComponentField f{g, {CField(g, 1.0), CField(g, 2.0), CField(g, cplx(0, 1)), CField(g, 3.0)}};
  for (auto s : {DiracSystem::direct, DiracSystem::conjugated, DiracSystem::conjugated_alpha0}) {
    auto r = dirac_residual(f, 0.0, 0, s);
    EXPECT_LT(r.max, 1e-12) << to_string(s);
  }
  Grid tiny{0, 0, 0.1, 2, 5};
  ComponentField t{tiny, {CField(tiny), CField(tiny), CField(tiny), CField(tiny)}};
  EXPECT_THROW(dirac_residual(t, 0.0, 0, DiracSystem::conjugated_alpha0), std::invalid_argument);
}

TEST(Residual, ManufacturedSolutionsSecondOrder) {
  const cplx H(1.3, 0), k1(0.7, 0.3), k2(-0.4, 0.9);
  for (auto w : {Wirtinger::standard, Wirtinger::paper})
    for (auto s : {DiracSystem::direct, DiracSystem::conjugated, DiracSystem::conjugated_alpha0}) {
      double prev = 0, scale = 0;
      for (double h : {0.05, 0.025, 0.0125}) {
        Grid g = unit_grid(h);
        auto f = plane_wave(g, s, 0.4, H, k1, k2, w);
        double r = dirac_residual(f, H, 0.4, s, w).max;
        if (prev > 0) {
          EXPECT_GE(prev / r, 3.5) << to_string(s) << " " << to_string(w) << " h=" << h;
        }
        prev = r;
        scale = 0;
        for (auto& c : f.phi) scale = std::max(scale, max_abs(c));
      }
      EXPECT_LT(prev / scale, 1e-2);
    }
}

TEST(Residual, ConventionMatters) {
  // a solution for one sign of d/dz is not a solution for the other
  Grid g = unit_grid(0.0125);
  auto f = plane_wave(g, DiracSystem::conjugated_alpha0, 0, 1.0, cplx(0.7, 0.3), cplx(0.5, -0.2), Wirtinger::paper);
  EXPECT_LT(dirac_residual(f, 1.0, 0, DiracSystem::conjugated_alpha0, Wirtinger::paper).max, 1e-2);
  EXPECT_GT(dirac_residual(f, 1.0, 0, DiracSystem::conjugated_alpha0, Wirtinger::standard).max, 0.1);
}
