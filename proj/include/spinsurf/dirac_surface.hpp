#pragma once

#include "spinsurf/grid.hpp"
#include "spinsurf/spinor_fields.hpp"

#include <array>
#include <optional>

namespace spinsurf {

// Table of the induced Dirac operator: eps = 1 for S02 in M13, S20 in M31
// and S11 in M22, eps = i for the remaining listed immersions.
inline cplx epsilon_for(ImmersionCase c) {
  switch (c) {
    case ImmersionCase::S02_M13:
    case ImmersionCase::S20_M31:
    case ImmersionCase::S11_M22: return 1.0;
    case ImmersionCase::S20_M40:
    case ImmersionCase::S02_M04:
    case ImmersionCase::S11_M13:
    case ImmersionCase::S11_M31:
    case ImmersionCase::S20_M22:
    case ImmersionCase::S02_M22: return cplx(0, 1);
  }
  throw std::invalid_argument("unlisted immersion case");
}

struct DiracParams {
  double lambda1 = 0, lambda2 = 0;
  double g11 = 1, g22 = 1;
  CField H;  // empty means H = H0 everywhere
  cplx H0 = 0;

  double alpha() const { return lambda1 * g11 + lambda2 * g22; }
  double beta() const { return g11 + g22; }
  cplx H_at(std::size_t i, std::size_t j) const { return H.v.empty() ? H0 : H(i, j); }
};

struct SurfaceSpinorField {
  Grid grid;
  CField plus, minus;
};

// Right-hand sides D(psi+) = (alpha - eps beta H/2) psi-, D(psi-) = (alpha + eps beta H/2) psi+.
inline std::pair<CField, CField> dirac_apply(const SurfaceSpinorField& f, const DiracParams& p, ImmersionCase c) {
  const Grid& g = f.grid;
  if (f.plus.nx != g.nx || f.plus.ny != g.ny || f.minus.nx != g.nx || f.minus.ny != g.ny)
    throw std::invalid_argument("spinor components do not match the grid");
  if (!p.H.v.empty() && (p.H.nx != g.nx || p.H.ny != g.ny)) throw std::invalid_argument("H does not match the grid");
  const cplx eps = epsilon_for(c);
  const double a = p.alpha(), b = p.beta();
  CField dplus(g), dminus(g);
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j) {
      cplx m = 0.5 * eps * b * p.H_at(i, j);
      dplus(i, j) = (a - m) * f.minus(i, j);
      dminus(i, j) = (a + m) * f.plus(i, j);
    }
  return {dplus, dminus};
}

// Coefficient of z1 z2 in the difference of the two surface operators.
inline double twiddle_hat_difference(double H, double g11, double g22) { return 0.5 * (g11 + g22) * H; }

// With eps = i, beta = 2, lambda = 0 the component equations read
// D psi+ = -iH psi-, D psi- = iH psi+. On the basis (psi+, psi-) D acts as
// [[0, iH], [-iH, 0]]; psi0 = (1-i)/2 psi + (-1+i)/2 z1z2 psi must be an
// eigenvector with eigenvalue H.
inline bool compact_field_check(const QComplex& H) {
  auto d = find_zeta_units(ImmersionCase::S20_M40);
  auto z = zeta_matrices(d.squares);
  Matrix<QComplex> Z = z.zeta1 * z.zeta2;
  const QComplex i(0, 1), half(Rational(1, 2));
  const auto I = Matrix<QComplex>::identity(2);
  // eps+ = (1 + i z1z2)/2 must select the first slot
  if (!(half * (I + i * Z) == detail::cmat({{1, 0}, {0, 0}}))) return false;
  Matrix<QComplex> psi{{QComplex(1)}, {QComplex(1)}};
  Matrix<QComplex> C = half * (QComplex(1) - i) * I + half * (QComplex(-1) + i) * Z;
  Matrix<QComplex> psi0 = C * psi;
  const QComplex eps = i, beta(2), alpha(0);
  Matrix<QComplex> D(2, 2);
  D(1, 0) = alpha - half * eps * beta * H;
  D(0, 1) = alpha + half * eps * beta * H;
  return D * psi0 == H * psi0;
}

enum class DiracSystem { direct, conjugated, conjugated_alpha0 };

inline const char* to_string(DiracSystem s) {
  switch (s) {
    case DiracSystem::direct: return "direct";
    case DiracSystem::conjugated: return "conjugated";
    case DiracSystem::conjugated_alpha0: return "conjugated-alpha0";
  }
  return "?";
}

inline DiracSystem parse_dirac_system(const std::string& s) {
  if (s == "direct") return DiracSystem::direct;
  if (s == "conjugated") return DiracSystem::conjugated;
  if (s == "conjugated-alpha0") return DiracSystem::conjugated_alpha0;
  throw std::invalid_argument("unknown Dirac system '" + s + "'");
}

// phi[0..3] hold phi1..phi4.
struct ComponentField {
  Grid grid;
  std::array<CField, 4> phi;
};

struct ResidualReport {
  std::array<CField, 4> r;
  double max = 0;
  double max_interior = 0;
};

// direct:     phi1_z = (a - iH) phi4,    phi4_zb = (a + iH) phi1,
//     phi3_z = (a - iH) phi2,    phi2_zb = (a + iH) phi3
// conjugated: phi1*_z = (-a + H) phi4,   phi4_zb = (-a - H) phi1*,
//     phi3*_z = -(-a + H) phi2, -phi2_zb = (-a - H) phi3*
// conjugated_alpha0 is conjugated with a = 0.
inline ResidualReport dirac_residual(const ComponentField& f, const CField& H, double alpha, DiracSystem sys,
                                     Wirtinger w = Wirtinger::standard) {
  const Grid& g = f.grid;
  if (g.nx < 3 || g.ny < 3) throw std::invalid_argument("grid too small for centered differences");
  for (auto& c : f.phi)
    if (c.nx != g.nx || c.ny != g.ny) throw std::invalid_argument("component does not match the grid");
  if (H.nx != g.nx || H.ny != g.ny) throw std::invalid_argument("H does not match the grid");
  const double h = g.h;
  const cplx i(0, 1);
  if (sys == DiracSystem::conjugated_alpha0) alpha = 0;
  ResidualReport rep;
  for (auto& r : rep.r) r = CField(g);

  if (sys == DiracSystem::direct) {
    auto p1z = d_z(f.phi[0], h, w), p4zb = d_zbar(f.phi[3], h, w);
    auto p3z = d_z(f.phi[2], h, w), p2zb = d_zbar(f.phi[1], h, w);
    for (std::size_t k = 0; k < g.size(); ++k) {
      cplx m = alpha - i * H.v[k], pl = alpha + i * H.v[k];
      rep.r[0].v[k] = p1z.v[k] - m * f.phi[3].v[k];
      rep.r[1].v[k] = p4zb.v[k] - pl * f.phi[0].v[k];
      rep.r[2].v[k] = p3z.v[k] - m * f.phi[1].v[k];
      rep.r[3].v[k] = p2zb.v[k] - pl * f.phi[2].v[k];
    }
  } else {
    auto c1 = conj(f.phi[0]), c3 = conj(f.phi[2]);
    auto c1z = d_z(c1, h, w), p4zb = d_zbar(f.phi[3], h, w);
    auto c3z = d_z(c3, h, w), p2zb = d_zbar(f.phi[1], h, w);
    for (std::size_t k = 0; k < g.size(); ++k) {
      cplx m = -alpha + H.v[k], pl = -alpha - H.v[k];
      rep.r[0].v[k] = c1z.v[k] - m * f.phi[3].v[k];
      rep.r[1].v[k] = p4zb.v[k] - pl * c1.v[k];
      rep.r[2].v[k] = c3z.v[k] + m * f.phi[1].v[k];
      rep.r[3].v[k] = -p2zb.v[k] - pl * c3.v[k];
    }
  }
  for (auto& r : rep.r) {
    rep.max = std::max(rep.max, max_abs(r));
    for (std::size_t a = 1; a + 1 < g.nx; ++a)
      for (std::size_t b = 1; b + 1 < g.ny; ++b) rep.max_interior = std::max(rep.max_interior, std::abs(r(a, b)));
  }
  return rep;
}

inline ResidualReport dirac_residual(const ComponentField& f, cplx H, double alpha, DiracSystem sys,
                                     Wirtinger w = Wirtinger::standard) {
  return dirac_residual(f, CField(f.grid, H), alpha, sys, w);
}

}  // namespace spinsurf
