#include "spinsurf/weierstrass.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace spinsurf;

namespace {

const cplx I(0, 1);

PotentialSpec minimal_spec() {
  PotentialSpec s;
  s.kind = PotentialKind::zero;
  // psi antiholomorphic, phi holomorphic
  s.components = {[](double x, double y) { return 0.3 * cplx(x, -y); },
                  [](double x, double y) { return 0.5 * std::exp(cplx(x, -y)); },
                  [](double, double) { return cplx(1); },
                  [](double x, double y) { return -std::exp(0.5 * cplx(x, y)); }};
  return s;
}

PotentialSpec revolution_spec() {
  PotentialSpec s;
  s.kind = PotentialKind::sech_revolution;
  return s;
}

Grid revolution_grid() {
  // x in [-2, 2], y over one full turn of exp(2 l y)
  const double h = 0.02;
  return {-2, 0, h, 201, std::size_t(std::lround(2 * M_PI / h)) + 1};
}

}  // namespace

TEST(GaussMap, Examples) {
  auto v = gauss_vector(0, 0);
  EXPECT_EQ(v[0], cplx(1));
  EXPECT_EQ(v[1], I);
  EXPECT_EQ(v[2], cplx(0));
  EXPECT_EQ(v[3], cplx(0));
  cplx z(0.3, -1.1);
  auto w = gauss_vector(z, -z);
  EXPECT_LT(std::abs(w[0] - (1.0 - z * z)), 1e-15);
  EXPECT_LT(std::abs(w[1] - I * (1.0 + z * z)), 1e-15);
  EXPECT_LT(std::abs(w[2] - 2.0 * z), 1e-15);
  EXPECT_LT(std::abs(w[3]), 1e-15);
}

TEST(GaussMap, IsotropicOnRandomSamples) {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> n;
  Grid g{0, 0, 1, 40, 40};
  auto f1 = sample(g, [&](double, double) { return cplx(n(rng), n(rng)); });
  auto f2 = sample(g, [&](double, double) { return cplx(n(rng), n(rng)); });
  EXPECT_LE(gauss_map(f1, f2).defect, 1e-12);
}

TEST(ZakharovShabat, FreePropagation) {
  ZSProblem pb{[](double) { return 0.0; }, 1.0, Wirtinger::paper};
  ZSState y0 = {cplx(1, 0.5), cplx(-0.2, 1), cplx(0.3), cplx(0, 2)};
  auto s = integrate_zs(pb, y0, 0, 2, 2000);
  for (std::size_t k = 0; k < s.x.size(); k += 100) {
    EXPECT_LT(std::abs(s.y[k][0] - y0[0] * std::exp(-I * s.x[k])), 1e-11);
    EXPECT_LT(std::abs(s.y[k][1] - y0[1] * std::exp(I * s.x[k])), 1e-11);
  }
  // the standard convention flips the spectral parameter
  ZSProblem st{pb.H, 1.0, Wirtinger::standard};
  auto t = integrate_zs(st, y0, 0, 2, 2000);
  EXPECT_LT(std::abs(t.y.back()[0] - y0[0] * std::exp(2.0 * I)), 1e-11);
}

TEST(ZakharovShabat, SechFixture) {
  // frozen from an independent adaptive 8th-order integration (rtol 1e-13)
  ZSProblem pb{SechProfile{1, 0}, cplx(0, 0.5), Wirtinger::paper};
  auto s = integrate_zs(pb, {1.0, 0.3, 1.0, -0.3}, -2, 2, 4000);
  EXPECT_NEAR(s.y[2000][0].real(), -0.471255825712609, 1e-10);
  EXPECT_NEAR(s.y[2000][1].real(), -1.26195936878678, 1e-10);
  EXPECT_NEAR(s.y.back()[0].real(), -0.959627401451214, 1e-10);
  EXPECT_NEAR(s.y.back()[1].real(), 1.36943997916489, 1e-10);
  EXPECT_NEAR(s.y.back()[2].real(), -0.959627401451214, 1e-10);
  EXPECT_NEAR(s.y.back()[3].real(), -1.36943997916489, 1e-10);
  for (auto& y : s.y)
    for (auto& c : y) ASSERT_LT(std::abs(c.imag()), 1e-14);
}

TEST(ZakharovShabat, RichardsonAndResidual) {
  ZSProblem pb{SechProfile{1, 0}, cplx(0, 0.5), Wirtinger::paper};
  EXPECT_LE(zs_richardson(pb, {1.0, 0.3, 1.0, -0.3}, -5, 5, 10000), 1e-8);
  auto s = integrate_zs(pb, {1.0, 0.3, 1.0, -0.3}, -5, 5, 10000);
  EXPECT_LE(zs_residual(pb, s), 1e-8);
}

TEST(ZakharovShabat, ModulusConservedForRealLambda) {
  ZSProblem pb{SechProfile{1, 0}, 0.8, Wirtinger::paper};
  ZSState y0 = {cplx(0.6, 0.1), cplx(-0.4, 0.7), cplx(1), cplx(0, -1)};
  auto s = integrate_zs(pb, y0, -4, 4, 8000);
  double m1 = std::norm(y0[0]) + std::norm(y0[1]), m2 = std::norm(y0[2]) + std::norm(y0[3]);
  for (auto& y : s.y) {
    ASSERT_NEAR(std::norm(y[0]) + std::norm(y[1]), m1, 1e-10);
    ASSERT_NEAR(std::norm(y[2]) + std::norm(y[3]), m2, 1e-10);
  }
}

TEST(ZakharovShabat, TooFewStepsRejected) {
  EXPECT_THROW(solve_revolution_zs(revolution_spec(), -1, 1, 50), std::invalid_argument);
  auto coarse = revolution_spec();
  coarse.tol = 1e-12;
  EXPECT_FALSE(solve_revolution_zs(coarse, -2, 2, 100).ok);
}

TEST(SpinorGrid, ConstantData) {
  PotentialSpec s;
  s.components = {[](double, double) { return cplx(0); }, [](double, double) { return cplx(0); },
                  [](double, double) { return cplx(1); }, [](double, double) { return cplx(1); }};
  auto sg = build_spinor_grid(s, Grid{0, 0, 0.1, 5, 5});
  EXPECT_EQ(sg.residual, 0.0);
  EXPECT_EQ(sg.grid_residual, 0.0);
}

TEST(SpinorGrid, PlaneWaveDispersion) {
  // psi = exp(k z + m zb), phi = (k/p) psi with p constant needs m = -p^2/k
  const cplx p = I * 0.8, k(0.5, 0.2), m = -p * p / k;
  auto spec = [&](cplx mm) {
    PotentialSpec s;
    s.kind = PotentialKind::closed_form;
    s.p = [=](double, double) { return p; };
    auto psi = [=](double x, double y) { return std::exp(k * cplx(x, y) + mm * cplx(x, -y)); };
    auto phi = [=](double x, double y) { return k / p * psi(x, y); };
    s.components = {psi, psi, phi, phi};
    return s;
  };
  Grid g{0, 0, 0.05, 11, 11};
  EXPECT_LT(build_spinor_grid(spec(m), g).residual, 1e-9);
  try {
    build_spinor_grid(spec(m + 0.1), g);
    FAIL() << "wrong dispersion accepted";
  } catch (const InvalidSpinorData& e) {
    EXPECT_GT(e.residual, 1e-3);
  }
}

TEST(SpinorGrid, RevolutionAnsatzSolvesConjugatedSystem) {
  auto spec = revolution_spec();
  Grid g{-1, 0, 1e-3, 2001, 11};
  auto sg = build_spinor_grid(spec, g);
  ASSERT_TRUE(sg.dh);
  EXPECT_LE(sg.residual, 1e-8);
  EXPECT_LE(sg.grid_residual, 1e-6);
  auto r = dirac_residual(*sg.dh, sg.p, 0, DiracSystem::conjugated_alpha0, spec.conv);
  EXPECT_LE(r.max_interior, 1e-6);
  // the same data under the other d/dz fail
  EXPECT_GT(dirac_residual(*sg.dh, sg.p, 0, DiracSystem::conjugated_alpha0, Wirtinger::paper).max_interior, 1e-2);
}

TEST(Immersion, ZeroAndPlanarData) {
  Grid g{0, 0, 0.1, 6, 6};
  PotentialSpec z;
  for (auto& c : z.components) c = [](double, double) { return cplx(0); };
  auto zero = integrate_immersion(build_spinor_grid(z, g), Ambient::R40);
  for (auto& X : zero.X) EXPECT_EQ(max_abs(X), 0.0);

  // phi1 = phi3 = 1, phi4 = phi2 = 0 in phi1..phi4 naming
  ComponentField f{g, {CField(g, 1.0), CField(g), CField(g, 1.0), CField(g)}};
  auto sg = from_phi_naming(f, CField(g));
  EXPECT_EQ(sg.residual, 0.0);
  auto m = integrate_immersion(sg, Ambient::R40);
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j) {
      EXPECT_NEAR(m.X[0](i, j), g.x(i) - g.x0, 1e-14);
      EXPECT_NEAR(m.X[1](i, j), -(g.y(j) - g.y0), 1e-14);
      EXPECT_NEAR(m.X[2](i, j), 0, 1e-14);
      EXPECT_NEAR(m.X[3](i, j), 0, 1e-14);
    }
  auto c = curvatures(m, sg);
  EXPECT_LE(c.max_H_mesh, 1e-9);
  for (auto& k : c.K_mesh.v) EXPECT_LE(std::abs(k), 1e-6);
  EXPECT_NEAR(c.metric_ratio_min, 1, 1e-12);
  EXPECT_NEAR(c.metric_ratio_max, 1, 1e-12);
}

TEST(Immersion, MinimalSurface) {
  Grid g = Grid::centered(200, 1e-2);
  auto sg = build_spinor_grid(minimal_spec(), g);
  EXPECT_LT(sg.residual, 1e-9);
  auto m = integrate_immersion(sg, Ambient::R40);
  EXPECT_LE(m.path_defect, 1e-8);
  EXPECT_FALSE(m.warning);
  auto c = curvatures(m, sg);
  EXPECT_LE(c.max_H_mesh, 1e-3);
  EXPECT_LE(c.max_conformality, 1e-6);
  EXPECT_EQ(c.excluded, 0u);
  EXPECT_GE(c.metric_ratio_min, 0.99);
  EXPECT_LE(c.metric_ratio_max, 1.01);
  // intrinsic formula against the Gauss equation on the mesh
  EXPECT_LE(c.max_rel_K, 0.05);
}

TEST(Immersion, PathDefectScalesWithH) {
  // the largest cell loop is O(h^4) for closed forms
  double prev = 0;
  for (double h : {0.02, 0.01}) {
    Grid g = Grid::centered(std::size_t(std::lround(1.0 / h)) + 1, h);
    auto m = integrate_immersion(build_spinor_grid(minimal_spec(), g), Ambient::R40);
    if (prev > 0) {
      EXPECT_GE(prev / m.path_defect, 10.0);
    }
    prev = m.path_defect;
  }
}

TEST(Immersion, NonClosedDataFlagged) {
  // a holomorphic psi violates psi_z = 0
  auto s = minimal_spec();
  s.components[0] = [](double x, double y) { return cplx(x, y) * cplx(x, y); };
  Grid g = Grid::centered(21, 0.05);
  EXPECT_THROW(build_spinor_grid(s, g), InvalidSpinorData);
  SpinorGrid sg;
  sg.grid = g;
  sg.psi1 = sample(g, s.components[0]);
  sg.psi2 = sample(g, s.components[1]);
  sg.phi1 = sample(g, s.components[2]);
  sg.phi2 = sample(g, s.components[3]);
  sg.p = CField(g);
  EXPECT_TRUE(integrate_immersion(sg, Ambient::R40).warning);
}

TEST(Immersion, SechRevolution) {
  auto sg = build_spinor_grid(revolution_spec(), revolution_grid());
  auto m = integrate_immersion(sg, Ambient::R40);
  auto fit = fit_parallels(m);
  EXPECT_LE(fit.max_spread, 1e-8);
  auto c = curvatures(m, sg);
  EXPECT_LE(c.max_rel_H, 0.02);
  EXPECT_GE(c.metric_ratio_min, 0.99);
  EXPECT_LE(c.metric_ratio_max, 1.01);
  EXPECT_LE(c.max_conformality, 1e-6);
}

TEST(Immersion, OtherAmbientSpaces) {
  Grid g{-1, 0, 0.02, 101, 51};
  auto sg = build_spinor_grid(revolution_spec(), g);
  auto r13 = integrate_immersion(sg, Ambient::R13);
  auto r22 = integrate_immersion(sg, Ambient::R22);
  for (auto* m : {&r13, &r22})
    for (auto& X : m->X)
      for (double v : X.v) ASSERT_TRUE(std::isfinite(v));
  // the printed X3, X4 integrands of the Lorentzian formulae are purely imaginary
  EXPECT_GT(r13.reality_defect, 1e-3);
  SpinorGrid no_dh = sg;
  no_dh.dh.reset();
  EXPECT_THROW(integrate_immersion(no_dh, Ambient::R13), std::invalid_argument);
}

TEST(MKdV, Residuals) {
  std::vector<long double> xs, ts = {-0.3L, 0.0L, 0.4L};
  for (int k = -20; k <= 20; ++k) xs.push_back(0.1L * k);
  const long double h = 1e-3L;
  auto zero = mkdv_residual([](long double, long double) { return 0.0L; }, xs, ts, h);
  EXPECT_EQ(zero.printed, 0.0L);
  for (long double mu : {0.5L, 1.0L, 1.7L}) {
    // amplitude and speed fixed by direct substitution of A sech(mu x + c t)
    EXPECT_LE(mkdv_residual(sech_wave(2 * mu, mu, mu * mu * mu), xs, ts, h).printed, 1e-6L) << double(mu);
    EXPECT_LE(mkdv_residual(sech_wave(-2 * mu, mu, mu * mu * mu), xs, ts, h).printed, 1e-6L) << double(mu);
    EXPECT_LE(mkdv_residual(sech_wave(2 * mu, mu, -mu * mu * mu), xs, ts, h).variant, 1e-6L) << double(mu);
  }
  // as printed: u = sech(mu x - mu^3 t), mu = 1, satisfies neither form
  auto lit = mkdv_residual(sech_wave(1, 1, -1), xs, ts, h);
  EXPECT_GT(lit.printed, 0.1L);
  EXPECT_GT(lit.variant, 0.1L);
}

TEST(MVN, RevolutionReduction) {
  // for p = p(x, t) and w = p^2 the equation becomes p_t + p_xxx/4 + 6 p^2 p_x = 0,
  // solved by p = k sech(k (2x - 2k^2 t))
  const long double k = 0.5L;
  auto p = [k](long double x, long double, long double t) {
    return std::complex<long double>(k / std::cosh(k * (2 * x - 2 * k * k * t)), 0);
  };
  auto w = [p](long double x, long double y, long double t) { return p(x, y, t) * p(x, y, t); };
  std::vector<std::array<long double, 3>> pts = {{0, 0, 0}, {0.7L, 0.2L, 0.1L}, {-1.3L, 1, -0.5L}};
  auto r = mvn_residual(p, w, pts, 1e-2L);
  EXPECT_LE(r.equation, 1e-6L);
  EXPECT_LE(r.constraint, 1e-6L);
  auto bad = mvn_residual(p, [](long double, long double, long double) { return std::complex<long double>(0); },
                          pts, 1e-2L);
  EXPECT_GT(bad.equation, 1e-3L);
}

TEST(Hestenes, Invariants) {
  Signature s(1, 3);
  Multivector<double> one(s);
  one[0] = 1;
  auto h1 = hestenes_invariants(one);
  EXPECT_DOUBLE_EQ(h1.rho, 1);
  EXPECT_DOUBLE_EQ(h1.beta, 0);
  for (double b : {-2.5, -0.4, 0.9, 3.0}) {
    Multivector<double> phi(s);
    phi[0] = std::cos(b / 2);
    phi[0b1111] = std::sin(b / 2);
    auto h = hestenes_invariants(phi);
    EXPECT_NEAR(h.rho, 1, 1e-15);
    EXPECT_NEAR(h.beta, b, 1e-14);
  }
  EXPECT_TRUE(hestenes_invariants(Multivector<double>(s)).degenerate);
}

TEST(Hestenes, RandomEvenElements) {
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  for (int t = 0; t < 200; ++t) {
    std::array<Rational, 8> a;
    for (auto& x : a) x = Rational(num(rng), den(rng));
    auto phi = even_element({1, 3}, a);
    auto q = phi * phi.reverse();
    // only scalar and pseudoscalar parts survive
    for (Mask m = 1; m < 15; ++m) ASSERT_EQ(q[m], Rational(0)) << blade_name(m);
    auto h = hestenes_invariants(dirac_hestenes_from_coefficients(a));
    ASSERT_NEAR(h.rho * std::cos(h.beta), to_double(q[0]), 1e-12);
    ASSERT_NEAR(h.rho * std::sin(h.beta), to_double(q[15]), 1e-12);
  }
}
