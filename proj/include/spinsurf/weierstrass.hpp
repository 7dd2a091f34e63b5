#pragma once

#include "spinsurf/dirac_surface.hpp"
#include "spinsurf/grid.hpp"
#include "spinsurf/spinor_fields.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace spinsurf {

// ---------------------------------------------------------------- Gauss map

inline std::array<cplx, 4> gauss_vector(cplx f1, cplx f2) {
  const cplx i(0, 1), f = f1 * f2;
  return {1.0 + f, i * (1.0 - f), f1 - f2, -i * (f1 + f2)};
}

struct GaussMap {
  std::array<CField, 4> Phi;
  double defect = 0;  // max |sum Phi_k^2|
};

inline GaussMap gauss_map(const CField& f1, const CField& f2) {
  if (f1.nx != f2.nx || f1.ny != f2.ny) throw std::invalid_argument("f1 and f2 sampled on different grids");
  GaussMap g;
  for (auto& c : g.Phi) c = CField(f1.nx, f1.ny);
  for (std::size_t k = 0; k < f1.v.size(); ++k) {
    auto v = gauss_vector(f1.v[k], f2.v[k]);
    cplx s = 0;
    for (int a = 0; a < 4; ++a) {
      g.Phi[a].v[k] = v[a];
      s += v[a] * v[a];
    }
    g.defect = std::max(g.defect, std::abs(s));
  }
  return g;
}

// --------------------------------------------------------- Zakharov-Shabat

// One-soliton potential H = mu sech(mu x + mu^3 t), i.e. u/2 for the
// mKdV soliton u = 2 mu sech(mu x + mu^3 t).
struct SechProfile {
  double mu = 1, t = 0;
  double operator()(double x) const { return mu / std::cosh(mu * x + mu * mu * mu * t); }
};

using ZSState = std::array<cplx, 4>;  // r1, s1, r2, s2

// r1' + i l r1 = 2H s1,  s1' - i l s1 = -2H r1,
// r2' + i l r2 = -2H s2, s2' - i l s2 = 2H r2.
// This is the reduction under d/dz = (d/dx + i d/dy)/2; the standard one flips l.
struct ZSProblem {
  std::function<double(double)> H;
  cplx lambda;
  Wirtinger conv = Wirtinger::paper;

  ZSState rhs(double x, const ZSState& y) const {
    const cplx il = cplx(0, 1) * lambda * (conv == Wirtinger::paper ? 1.0 : -1.0);
    const double h2 = 2 * H(x);
    return {-il * y[0] + h2 * y[1], il * y[1] - h2 * y[0], -il * y[2] - h2 * y[3], il * y[3] + h2 * y[2]};
  }
};

struct ZSSolution {
  cplx lambda;
  std::vector<double> x;
  std::vector<ZSState> y;
  double residual = 0;
};

inline ZSState axpy(const ZSState& y, cplx a, const ZSState& k) {
  ZSState r;
  for (int i = 0; i < 4; ++i) r[i] = y[i] + a * k[i];
  return r;
}

inline ZSSolution integrate_zs(const ZSProblem& pb, ZSState y0, double x0, double x1, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("need at least one step");
  const double h = (x1 - x0) / double(steps);
  ZSSolution s{pb.lambda, {x0}, {y0}, 0};
  ZSState y = y0;
  for (std::size_t n = 0; n < steps; ++n) {
    double x = x0 + double(n) * h;
    auto k1 = pb.rhs(x, y);
    auto k2 = pb.rhs(x + h / 2, axpy(y, h / 2, k1));
    auto k3 = pb.rhs(x + h / 2, axpy(y, h / 2, k2));
    auto k4 = pb.rhs(x + h, axpy(y, h, k3));
    for (int i = 0; i < 4; ++i) y[i] += h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    s.x.push_back(x0 + double(n + 1) * h);
    s.y.push_back(y);
  }
  return s;
}

// Max residual of the ODE on the samples, derivatives by fourth-order
// differences (one-sided near the ends).
inline double zs_residual(const ZSProblem& pb, const ZSSolution& s) {
  const std::size_t n = s.x.size();
  if (n < 5) throw std::invalid_argument("need at least 5 samples");
  const double h = s.x[1] - s.x[0];
  double worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    ZSState d;
    for (int c = 0; c < 4; ++c) {
      auto Y = [&](std::size_t m) { return s.y[m][c]; };
      if (k >= 2 && k + 2 < n)
        d[c] = (Y(k - 2) - 8.0 * Y(k - 1) + 8.0 * Y(k + 1) - Y(k + 2)) / (12 * h);
      else if (k < 2)
        d[c] = (-25.0 * Y(k) + 48.0 * Y(k + 1) - 36.0 * Y(k + 2) + 16.0 * Y(k + 3) - 3.0 * Y(k + 4)) / (12 * h);
      else
        d[c] = (25.0 * Y(k) - 48.0 * Y(k - 1) + 36.0 * Y(k - 2) - 16.0 * Y(k - 3) + 3.0 * Y(k - 4)) / (12 * h);
    }
    auto f = pb.rhs(s.x[k], s.y[k]);
    for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(d[c] - f[c]));
  }
  return worst;
}

// max difference between the step-h and step-h/2 solutions on the coarse nodes
inline double zs_richardson(const ZSProblem& pb, ZSState y0, double x0, double x1, std::size_t steps) {
  auto a = integrate_zs(pb, y0, x0, x1, steps);
  auto b = integrate_zs(pb, y0, x0, x1, 2 * steps);
  double worst = 0;
  for (std::size_t k = 0; k < a.x.size(); ++k)
    for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(a.y[k][c] - b.y[2 * k][c]));
  return worst;
}

enum class PotentialKind { zero, closed_form, sech_revolution };

inline const char* to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::closed_form: return "closed-form";
    case PotentialKind::sech_revolution: return "sech-revolution";
  }
  return "?";
}

inline PotentialKind parse_potential_kind(const std::string& s) {
  if (s == "zero") return PotentialKind::zero;
  if (s == "closed-form") return PotentialKind::closed_form;
  if (s == "sech-revolution") return PotentialKind::sech_revolution;
  throw std::invalid_argument("unknown potential kind '" + s + "'");
}

using ComplexFn = std::function<cplx(double, double)>;

struct PotentialSpec {
  PotentialKind kind = PotentialKind::zero;
  // zero / closed-form: potential and components psi1, psi2, phi1, phi2
  ComplexFn p;
  std::array<ComplexFn, 4> components;
  // sech-revolution
  double mu = 1, t = 0;
  cplx lambda = cplx(0, 0.5);
  ZSState zs_initial = {1.0, 0.3, 1.0, -0.3};
  std::size_t zs_substeps = 10;
  double tol = 1e-6;
  Wirtinger conv = Wirtinger::standard;
};

struct ZSPair {
  ZSSolution sol;
  double residual = 0;
  bool ok = true;
};

inline ZSPair solve_revolution_zs(const PotentialSpec& spec, double x0, double x1, std::size_t steps) {
  if (steps < 100) throw std::invalid_argument("solve_revolution_zs needs at least 100 steps");
  ZSProblem pb{SechProfile{spec.mu, spec.t}, spec.lambda, spec.conv};
  ZSPair out{integrate_zs(pb, spec.zs_initial, x0, x1, steps), 0, true};
  out.residual = out.sol.residual = zs_residual(pb, out.sol);
  out.ok = out.residual <= spec.tol;
  return out;
}

// ------------------------------------------------------------- spinor grids

// Components psi1, psi2, phi1, phi2; dh carries phi1..phi4 when the data come from
// the revolution ansatz phi1* = r1 e^{ly}, phi4 = s1 e^{ly}, phi3* = r2 e^{ly},
// phi2 = s2 e^{ly}.
struct SpinorGrid {
  Grid grid;
  CField psi1, psi2, phi1, phi2;
  CField p;
  Wirtinger conv = Wirtinger::standard;
  double residual = 0;       // validated residual of the governing system
  double grid_residual = 0;  // same system with second-order differences on the grid
  std::optional<ComponentField> dh;
};

struct PairResidual {
  double max = 0, max_interior = 0;
};

// psi_a,z = p phi_a, phi_a,zb = -p psi_a
inline PairResidual pair_residual(const SpinorGrid& s) {
  const double h = s.grid.h;
  PairResidual r;
  auto track = [&](const CField& d, const CField& rhs, double sign) {
    for (std::size_t i = 0; i < d.nx; ++i)
      for (std::size_t j = 0; j < d.ny; ++j) {
        double e = std::abs(d(i, j) - sign * s.p(i, j) * rhs(i, j));
        r.max = std::max(r.max, e);
        if (i > 0 && j > 0 && i + 1 < d.nx && j + 1 < d.ny) r.max_interior = std::max(r.max_interior, e);
      }
  };
  track(d_z(s.psi1, h, s.conv), s.phi1, 1);
  track(d_z(s.psi2, h, s.conv), s.phi2, 1);
  track(d_zbar(s.phi1, h, s.conv), s.psi1, -1);
  track(d_zbar(s.phi2, h, s.conv), s.psi2, -1);
  return r;
}

// From phi1..phi4: psi1 = phi1, phi1 -> phi4, psi2 = phi3, phi2 -> phi2 with p = iH.
inline SpinorGrid from_phi_naming(const ComponentField& f, const CField& p, Wirtinger conv = Wirtinger::standard) {
  SpinorGrid s{f.grid, f.phi[0], f.phi[2], f.phi[3], f.phi[1], p, conv, 0, 0, f};
  s.residual = s.grid_residual = pair_residual(s).max_interior;
  return s;
}

struct InvalidSpinorData : std::runtime_error {
  double residual;
  InvalidSpinorData(const std::string& what, double r) : std::runtime_error(what), residual(r) {}
};

// psi_z = p phi, phi_zb = -p psi for closed-form data at the grid nodes, derivatives taken from
// the callables with fourth-order stencils of step delta, so the check does
// not depend on the grid spacing.
inline double pair_residual_exact(const PotentialSpec& spec, const Grid& g, double delta = 1e-3) {
  const double sgn = wirtinger_sign(spec.conv);
  auto d = [&](const ComplexFn& f, double x, double y, double s) {
    const double e = delta;
    cplx fx = (f(x - 2 * e, y) - 8.0 * f(x - e, y) + 8.0 * f(x + e, y) - f(x + 2 * e, y)) / (12 * e);
    cplx fy = (f(x, y - 2 * e) - 8.0 * f(x, y - e) + 8.0 * f(x, y + e) - f(x, y + 2 * e)) / (12 * e);
    return 0.5 * (fx + cplx(0, s) * fy);
  };
  double worst = 0;
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j) {
      const double x = g.x(i), y = g.y(j);
      const cplx p = spec.kind == PotentialKind::zero || !spec.p ? cplx(0) : spec.p(x, y);
      for (int a = 0; a < 2; ++a) {
        const ComplexFn& psi = spec.components[a];
        const ComplexFn& phi = spec.components[a + 2];
        worst = std::max(worst, std::abs(d(psi, x, y, sgn) - p * phi(x, y)));
        worst = std::max(worst, std::abs(d(phi, x, y, -sgn) + p * psi(x, y)));
      }
    }
  return worst;
}

inline SpinorGrid build_spinor_grid(const PotentialSpec& spec, const Grid& g) {
  SpinorGrid s;
  s.grid = g;
  s.conv = spec.conv;
  if (spec.kind == PotentialKind::sech_revolution) {
    const std::size_t sub = std::max<std::size_t>(spec.zs_substeps, 1);
    const std::size_t stride = std::max<std::size_t>(sub, (100 + g.nx - 2) / (g.nx - 1));
    auto zs = solve_revolution_zs(spec, g.x(0), g.x(g.nx - 1), stride * (g.nx - 1));
    // the ansatz makes the y-dependence exact, so the ODE residual is the residual of the system
    s.residual = zs.residual;
    if (!zs.ok) throw InvalidSpinorData("Zakharov-Shabat residual above tolerance", zs.residual);
    ComponentField dh{g, {CField(g), CField(g), CField(g), CField(g)}};
    s.p = CField(g);
    SechProfile H{spec.mu, spec.t};
    for (std::size_t i = 0; i < g.nx; ++i) {
      const ZSState& y = zs.sol.y[i * stride];
      for (std::size_t j = 0; j < g.ny; ++j) {
        cplx e = std::exp(spec.lambda * g.y(j));
        dh.phi[0](i, j) = std::conj(y[0] * e);
        dh.phi[3](i, j) = y[1] * e;
        dh.phi[2](i, j) = std::conj(y[2] * e);
        dh.phi[1](i, j) = y[3] * e;
        s.p(i, j) = H(g.x(i));
      }
    }
    // the pairs (phi1*, phi4) and (phi3*, -phi2) solve psi_z = p phi, phi_zb = -p psi with p = H
    s.psi1 = conj(dh.phi[0]);
    s.phi1 = dh.phi[3];
    s.psi2 = conj(dh.phi[2]);
    s.phi2 = pointwise(dh.phi[1], [](cplx w) { return -w; });
    s.dh = std::move(dh);
  } else {
    for (auto& c : spec.components)
      if (!c) throw std::invalid_argument("spinor data need all four components");
    s.psi1 = sample(g, spec.components[0]);
    s.psi2 = sample(g, spec.components[1]);
    s.phi1 = sample(g, spec.components[2]);
    s.phi2 = sample(g, spec.components[3]);
    s.p = spec.kind == PotentialKind::zero || !spec.p ? CField(g) : sample(g, spec.p);
    s.residual = pair_residual_exact(spec, g);
    if (s.residual > spec.tol) throw InvalidSpinorData("spinor data do not satisfy the Dirac system", s.residual);
  }
  s.grid_residual = g.nx >= 3 && g.ny >= 3 ? pair_residual(s).max_interior : 0.0;
  return s;
}

// ----------------------------------------------------------- immersions

enum class Ambient { R40, R22, R13 };

inline const char* to_string(Ambient a) {
  switch (a) {
    case Ambient::R40: return "R40";
    case Ambient::R22: return "R22";
    case Ambient::R13: return "R13";
  }
  return "?";
}

inline Ambient parse_ambient(const std::string& s) {
  if (s == "R40") return Ambient::R40;
  if (s == "R22") return Ambient::R22;
  if (s == "R13") return Ambient::R13;
  throw std::invalid_argument("unknown ambient space '" + s + "'");
}

inline std::array<double, 4> ambient_metric(Ambient a) {
  switch (a) {
    case Ambient::R40: return {1, 1, 1, 1};
    case Ambient::R22: return {1, 1, -1, -1};
    case Ambient::R13: return {1, -1, -1, -1};
  }
  return {1, 1, 1, 1};
}

// a dz + b dzb with dz = dx + i s dy, s = +1 (standard) or -1 (paper)
struct OneForm {
  CField a, b;
};

struct Primitive {
  CField F;
  CField Fx, Fy;          // exact partial derivatives from the integrand
  double loop_defect = 0;  // max over grid cells of the trapezoid loop integral
};

inline Primitive integrate_form(const OneForm& w, const Grid& g, Wirtinger conv) {
  const double s = -wirtinger_sign(conv);
  const cplx is(0, s);
  Primitive out;
  out.Fx = zip(w.a, w.b, [](cplx a, cplx b) { return a + b; });
  out.Fy = zip(w.a, w.b, [is](cplx a, cplx b) { return is * (a - b); });
  const CField& P = out.Fx;
  const CField& Q = out.Fy;
  const double h = g.h;
  out.F = CField(g);
  for (std::size_t i = 1; i < g.nx; ++i) out.F(i, 0) = out.F(i - 1, 0) + 0.5 * h * (P(i - 1, 0) + P(i, 0));
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 1; j < g.ny; ++j) out.F(i, j) = out.F(i, j - 1) + 0.5 * h * (Q(i, j - 1) + Q(i, j));
  for (std::size_t i = 0; i + 1 < g.nx; ++i)
    for (std::size_t j = 0; j + 1 < g.ny; ++j) {
      cplx loop = 0.5 * h * (P(i, j) + P(i + 1, j)) + 0.5 * h * (Q(i + 1, j) + Q(i + 1, j + 1)) -
                  0.5 * h * (P(i, j + 1) + P(i + 1, j + 1)) - 0.5 * h * (Q(i, j) + Q(i, j + 1));
      out.loop_defect = std::max(out.loop_defect, std::abs(loop));
    }
  return out;
}

struct SurfaceMesh {
  Grid grid;
  Ambient ambient = Ambient::R40;
  std::array<RField, 4> X;
  std::array<RField, 4> Xx, Xy;  // from the differential
  RField conformal;               // case conformal factor
  RField conformality;            // |sum eta_k (dX^k/dz)^2|
  double path_defect = 0;
  double reality_defect = 0;  // largest discarded imaginary part
  bool warning = false;
};

namespace detail {

inline CField mul(const CField& a, const CField& b) {
  return zip(a, b, [](cplx x, cplx y) { return x * y; });
}

inline CField add(const CField& a, const CField& b) {
  return zip(a, b, [](cplx x, cplx y) { return x + y; });
}

inline CField scale(cplx c, const CField& a) {
  return pointwise(a, [c](cplx x) { return c * x; });
}

}  // namespace detail

inline SurfaceMesh integrate_immersion(const SpinorGrid& sg, Ambient amb, double path_tol = 1e-8) {
  using detail::add;
  using detail::mul;
  using detail::scale;
  const Grid& g = sg.grid;
  SurfaceMesh m;
  m.grid = g;
  m.ambient = amb;
  for (int k = 0; k < 4; ++k) m.X[k] = m.Xx[k] = m.Xy[k] = RField(g);
  m.conformal = m.conformality = RField(g);
  const cplx i(0, 1);

  // complex potentials and how each coordinate is read off: coordinate k = Re(c * F)
  std::vector<Primitive> prims;
  std::array<std::pair<int, cplx>, 4> read;
  if (amb == Ambient::R40) {
    prims.push_back(integrate_form({scale(-1, mul(sg.phi1, sg.phi2)), mul(sg.psi1, sg.psi2)}, g, sg.conv));
    prims.push_back(integrate_form({mul(sg.phi1, conj(sg.psi2)), mul(sg.psi1, conj(sg.phi2))}, g, sg.conv));
    read = {{{0, 1.0}, {0, -i}, {1, 1.0}, {1, -i}}};
  } else {
    if (!sg.dh) throw std::invalid_argument("R22 and R13 immersions need phi1..phi4 components");
    const auto& f = sg.dh->phi;
    auto c = [](const CField& a) { return conj(a); };
    if (amb == Ambient::R22) {
      prims.push_back(integrate_form({mul(f[2], f[3]), mul(f[0], f[1])}, g, sg.conv));
      prims.push_back(integrate_form({scale(i, mul(c(f[0]), f[3])), scale(i, mul(c(f[2]), f[1]))}, g, sg.conv));
      read = {{{0, 1.0}, {0, -i}, {1, 1.0}, {1, -i}}};
    } else {
      auto A = mul(f[0], f[3]), B = mul(f[2], f[1]);
      auto C = mul(f[3], f[2]), D = mul(f[0], f[1]);
      auto neg = [&](const CField& a) { return scale(-1, a); };
      prims.push_back(integrate_form({scale(0.5, add(A, B)), scale(0.5, c(add(A, B)))}, g, sg.conv));
      prims.push_back(integrate_form({scale(0.5, add(A, neg(B))), scale(0.5, c(add(A, neg(B))))}, g, sg.conv));
      prims.push_back(
          integrate_form({scale(0.5 * i, add(C, neg(D))), scale(0.5 * i, c(add(C, neg(D))))}, g, sg.conv));
      prims.push_back(integrate_form({scale(0.5, add(C, D)), scale(-0.5, c(add(D, C)))}, g, sg.conv));
      read = {{{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}}};
    }
  }
  for (auto& p : prims) m.path_defect = std::max(m.path_defect, p.loop_defect);
  const bool real_read = amb == Ambient::R13;
  for (std::size_t n = 0; n < g.size(); ++n) {
    for (int k = 0; k < 4; ++k) {
      const auto& [idx, c] = read[k];
      const Primitive& P = prims[idx];
      m.X[k].v[n] = (c * P.F.v[n]).real();
      m.Xx[k].v[n] = (c * P.Fx.v[n]).real();
      m.Xy[k].v[n] = (c * P.Fy.v[n]).real();
      if (real_read) m.reality_defect = std::max(m.reality_defect, std::abs(P.F.v[n].imag()));
    }
  }

  const auto eta = ambient_metric(amb);
  for (std::size_t n = 0; n < g.size(); ++n) {
    double E = 0, G = 0, F = 0;
    for (int k = 0; k < 4; ++k) {
      E += eta[k] * m.Xx[k].v[n] * m.Xx[k].v[n];
      G += eta[k] * m.Xy[k].v[n] * m.Xy[k].v[n];
      F += eta[k] * m.Xx[k].v[n] * m.Xy[k].v[n];
    }
    m.conformality.v[n] = 0.25 * std::abs(cplx(E - G, -2 * F));
    double u;
    if (amb == Ambient::R40) {
      u = (std::norm(sg.psi1.v[n]) + std::norm(sg.phi1.v[n])) * (std::norm(sg.psi2.v[n]) + std::norm(sg.phi2.v[n]));
    } else if (amb == Ambient::R13) {
      const auto& f = sg.dh->phi;
      u = std::norm(std::conj(f[0].v[n]) * f[1].v[n] + f[3].v[n] * std::conj(f[2].v[n]));
    } else {
      u = E;
    }
    m.conformal.v[n] = u;
  }
  m.warning = m.path_defect > path_tol;
  return m;
}

// ---------------------------------------------------------- curvature

struct CurvatureReport {
  RField H_formula, K_formula, H_mesh, K_mesh;
  double max_H_mesh = 0;       // interior
  double max_rel_H = 0;        // |H_mesh - H_formula| / H_formula where H_formula > 0
  double max_rel_K = 0;
  double max_conformality = 0;  // conformality / conformal factor
  double metric_ratio_min = 0, metric_ratio_max = 0;  // |X_x|^2 / conformal factor
  std::size_t excluded = 0;
};

namespace detail {

using Vec4 = std::array<double, 4>;

inline double dot(const Vec4& a, const Vec4& b, const Vec4& eta) {
  double s = 0;
  for (int k = 0; k < 4; ++k) s += eta[k] * a[k] * b[k];
  return s;
}

// part of v orthogonal (w.r.t. eta) to span{a, b}
inline Vec4 normal_part(const Vec4& v, const Vec4& a, const Vec4& b, const Vec4& eta) {
  double E = dot(a, a, eta), F = dot(a, b, eta), G = dot(b, b, eta);
  double va = dot(v, a, eta), vb = dot(v, b, eta), det = E * G - F * F;
  double ca = (G * va - F * vb) / det, cb = (E * vb - F * va) / det;
  Vec4 r;
  for (int k = 0; k < 4; ++k) r[k] = v[k] - ca * a[k] - cb * b[k];
  return r;
}

}  // namespace detail

inline CurvatureReport curvatures(const SurfaceMesh& m, const SpinorGrid& sg, double degenerate_tol = 1e-12) {
  using detail::Vec4;
  const Grid& g = m.grid;
  if (g.nx < 3 || g.ny < 3) throw std::invalid_argument("need interior nodes");
  const double h = g.h;
  const auto eta = ambient_metric(m.ambient);
  CurvatureReport r;
  r.H_formula = r.K_formula = r.H_mesh = r.K_mesh = RField(g);
  r.metric_ratio_min = std::numeric_limits<double>::infinity();
  r.metric_ratio_max = 0;
  const RField& U = m.conformal;
  bool first = true;
  for (std::size_t i = 1; i + 1 < g.nx; ++i)
    for (std::size_t j = 1; j + 1 < g.ny; ++j) {
      const double u = U(i, j);
      if (!(std::abs(u) > degenerate_tol)) {
        ++r.excluded;
        continue;
      }
      r.H_formula(i, j) = 2 * std::abs(sg.p(i, j)) / std::sqrt(std::abs(u));
      bool lap_ok = true;
      for (auto [a, b] : {std::pair{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}})
        if (!(std::abs(U(a, b)) > degenerate_tol)) lap_ok = false;
      if (lap_ok) {
        auto L = [&](std::size_t a, std::size_t b) { return std::log(std::abs(U(a, b))); };
        double lap = (L(i + 1, j) + L(i - 1, j) + L(i, j + 1) + L(i, j - 1) - 4 * L(i, j)) / (h * h);
        // -2/U (log U)_{z zb} with (.)_{z zb} = lap/4
        r.K_formula(i, j) = -lap / (2 * u);
      }

      Vec4 Xx, Xy, Xxx, Xyy, Xxy;
      for (int k = 0; k < 4; ++k) {
        const RField& X = m.X[k];
        Xx[k] = (X(i + 1, j) - X(i - 1, j)) / (2 * h);
        Xy[k] = (X(i, j + 1) - X(i, j - 1)) / (2 * h);
        Xxx[k] = (X(i + 1, j) - 2 * X(i, j) + X(i - 1, j)) / (h * h);
        Xyy[k] = (X(i, j + 1) - 2 * X(i, j) + X(i, j - 1)) / (h * h);
        Xxy[k] = (X(i + 1, j + 1) - X(i + 1, j - 1) - X(i - 1, j + 1) + X(i - 1, j - 1)) / (4 * h * h);
      }
      double E = detail::dot(Xx, Xx, eta), F = detail::dot(Xx, Xy, eta), G = detail::dot(Xy, Xy, eta);
      double det = E * G - F * F;
      if (!(std::abs(det) > degenerate_tol)) {
        ++r.excluded;
        continue;
      }
      auto n11 = detail::normal_part(Xxx, Xx, Xy, eta);
      auto n22 = detail::normal_part(Xyy, Xx, Xy, eta);
      auto n12 = detail::normal_part(Xxy, Xx, Xy, eta);
      Vec4 Hv;
      for (int k = 0; k < 4; ++k) Hv[k] = 0.5 * (G * n11[k] - 2 * F * n12[k] + E * n22[k]) / det;
      r.H_mesh(i, j) = std::sqrt(std::abs(detail::dot(Hv, Hv, eta)));
      r.K_mesh(i, j) = (detail::dot(n11, n22, eta) - detail::dot(n12, n12, eta)) / det;

      r.max_H_mesh = std::max(r.max_H_mesh, r.H_mesh(i, j));
      if (r.H_formula(i, j) > 0)
        r.max_rel_H = std::max(r.max_rel_H, std::abs(r.H_mesh(i, j) - r.H_formula(i, j)) / r.H_formula(i, j));
      if (lap_ok) {
        double scale = std::max(std::abs(r.K_formula(i, j)), 1e-12);
        r.max_rel_K = std::max(r.max_rel_K, std::abs(r.K_mesh(i, j) - r.K_formula(i, j)) / scale);
      }
      r.max_conformality = std::max(r.max_conformality, m.conformality(i, j) / std::abs(u));
      double ex = 0;
      for (int k = 0; k < 4; ++k) ex += m.Xx[k](i, j) * m.Xx[k](i, j);
      double ratio = ex / std::abs(u);
      if (first) r.metric_ratio_min = r.metric_ratio_max = ratio;
      r.metric_ratio_min = std::min(r.metric_ratio_min, ratio);
      r.metric_ratio_max = std::max(r.metric_ratio_max, ratio);
      first = false;
    }
  return r;
}

// Kasa least-squares circle through the (X^a, X^b) points of each parallel
// (fixed x, varying y). Returns the largest radius spread over the parallels.
struct CircleFit {
  std::vector<double> radius;
  std::vector<std::array<double, 2>> center;
  double max_spread = 0;
};

inline CircleFit fit_parallels(const SurfaceMesh& m, int a = 0, int b = 1) {
  CircleFit out;
  const Grid& g = m.grid;
  for (std::size_t i = 0; i < g.nx; ++i) {
    // minimise sum (x^2 + y^2 + D x + E y + F)^2
    double S[3][3] = {}, R[3] = {};
    for (std::size_t j = 0; j < g.ny; ++j) {
      double x = m.X[a](i, j), y = m.X[b](i, j);
      double row[3] = {x, y, 1}, rhs = -(x * x + y * y);
      for (int p = 0; p < 3; ++p) {
        R[p] += row[p] * rhs;
        for (int q = 0; q < 3; ++q) S[p][q] += row[p] * row[q];
      }
    }
    auto det3 = [](double m[3][3]) {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double d = det3(S);
    double sol[3];
    for (int c = 0; c < 3; ++c) {
      double T[3][3];
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) T[p][q] = q == c ? R[p] : S[p][q];
      sol[c] = det3(T) / d;
    }
    double cx = -sol[0] / 2, cy = -sol[1] / 2;
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (std::size_t j = 0; j < g.ny; ++j) {
      double rr = std::hypot(m.X[a](i, j) - cx, m.X[b](i, j) - cy);
      lo = std::min(lo, rr);
      hi = std::max(hi, rr);
    }
    out.radius.push_back(0.5 * (lo + hi));
    out.center.push_back({cx, cy});
    out.max_spread = std::max(out.max_spread, hi - lo);
  }
  return out;
}

// ---------------------------------------------------------------- mKdV

struct MKdVResidual {
  long double printed = 0;  // u_t - u_xxx - 3/2 u^2 u_x
  long double variant = 0;  // u_t + u_xxx + 3/2 u^2 u_x
};

using Field2 = std::function<long double(long double, long double)>;

// Fourth-order central stencils in x and t at every (x, t) sample.
inline MKdVResidual mkdv_residual(const Field2& u, const std::vector<long double>& xs,
                                  const std::vector<long double>& ts, long double h) {
  MKdVResidual r;
  for (long double t : ts)
    for (long double x : xs) {
      auto U = [&](long double dx, long double dt) { return u(x + dx, t + dt); };
      long double ux = (U(-2 * h, 0) - 8 * U(-h, 0) + 8 * U(h, 0) - U(2 * h, 0)) / (12 * h);
      long double ut = (U(0, -2 * h) - 8 * U(0, -h) + 8 * U(0, h) - U(0, 2 * h)) / (12 * h);
      long double uxxx = (U(-3 * h, 0) - 8 * U(-2 * h, 0) + 13 * U(-h, 0) - 13 * U(h, 0) + 8 * U(2 * h, 0) -
                          U(3 * h, 0)) /
                         (8 * h * h * h);
      long double v = U(0, 0), nl = 1.5L * v * v * ux;
      r.printed = std::max(r.printed, std::fabs(ut - uxxx - nl));
      r.variant = std::max(r.variant, std::fabs(ut + uxxx + nl));
    }
  return r;
}

// u = A sech(mu x + c t)
inline Field2 sech_wave(long double A, long double mu, long double c) {
  return [=](long double x, long double t) { return A / std::cosh(mu * x + c * t); };
}

// ------------------------------------------------------------------ mVN

using ComplexField3 = std::function<std::complex<long double>(long double, long double, long double)>;

struct MVNResidual {
  long double equation = 0;    // p_t + p_zzz + p_zbzbzb + 3 p_z w + 3 p_zb wb + 3/2 p wb_zb + 3/2 p w_z
  long double constraint = 0;  // w_zb - (p^2)_z
};

// Residuals at the given points, standard d/dz, fourth-order nested stencils.
inline MVNResidual mvn_residual(const ComplexField3& p, const ComplexField3& w,
                                const std::vector<std::array<long double, 3>>& pts, long double h) {
  using C = std::complex<long double>;
  using Fn = std::function<C(long double, long double, long double)>;
  auto dx = [h](Fn f) -> Fn {
    return [=](long double x, long double y, long double t) {
      return (f(x - 2 * h, y, t) - 8.0L * f(x - h, y, t) + 8.0L * f(x + h, y, t) - f(x + 2 * h, y, t)) / (12 * h);
    };
  };
  auto dy = [h](Fn f) -> Fn {
    return [=](long double x, long double y, long double t) {
      return (f(x, y - 2 * h, t) - 8.0L * f(x, y - h, t) + 8.0L * f(x, y + h, t) - f(x, y + 2 * h, t)) / (12 * h);
    };
  };
  auto dt = [h](Fn f) -> Fn {
    return [=](long double x, long double y, long double t) {
      return (f(x, y, t - 2 * h) - 8.0L * f(x, y, t - h) + 8.0L * f(x, y, t + h) - f(x, y, t + 2 * h)) / (12 * h);
    };
  };
  const C I(0, 1);
  auto dz = [&](Fn f) -> Fn {
    Fn a = dx(f), b = dy(f);
    return [=](long double x, long double y, long double t) { return 0.5L * (a(x, y, t) - I * b(x, y, t)); };
  };
  auto dzb = [&](Fn f) -> Fn {
    Fn a = dx(f), b = dy(f);
    return [=](long double x, long double y, long double t) { return 0.5L * (a(x, y, t) + I * b(x, y, t)); };
  };
  Fn P = p, W = w;
  Fn Wb = [=](long double x, long double y, long double t) { return std::conj(W(x, y, t)); };
  Fn P2 = [=](long double x, long double y, long double t) { return P(x, y, t) * P(x, y, t); };
  Fn pt = dt(P), pz = dz(P), pzb = dzb(P), pzzz = dz(dz(pz)), pzbzbzb = dzb(dzb(pzb));
  Fn wz = dz(W), wbzb = dzb(Wb), wzb = dzb(W), p2z = dz(P2);
  MVNResidual r;
  for (auto [x, y, t] : pts) {
    C e = pt(x, y, t) + pzzz(x, y, t) + pzbzbzb(x, y, t) + 3.0L * pz(x, y, t) * W(x, y, t) +
          3.0L * pzb(x, y, t) * Wb(x, y, t) + 1.5L * P(x, y, t) * wbzb(x, y, t) + 1.5L * P(x, y, t) * wz(x, y, t);
    r.equation = std::max(r.equation, std::abs(e));
    r.constraint = std::max(r.constraint, std::abs(wzb(x, y, t) - p2z(x, y, t)));
  }
  return r;
}

// ------------------------------------------------- Hestenes decomposition

struct HestenesInvariants {
  double rho = 0, beta = 0;
  bool degenerate = false;
};

// phi ~phi = s + p e1234 for an even element of Cl(1,3); rho e^{i beta} = s + i p.
inline HestenesInvariants hestenes_invariants(const Multivector<double>& phi, double tol = 1e-14) {
  if (!(phi.sig() == Signature(1, 3))) throw std::invalid_argument("Hestenes decomposition lives in Cl(1,3)");
  auto q = phi * phi.reverse();
  double s = q[0], p = q[0b1111];
  HestenesInvariants h;
  h.rho = std::hypot(s, p);
  h.degenerate = h.rho <= tol;
  h.beta = h.degenerate ? 0.0 : std::atan2(p, s);
  return h;
}

inline HestenesInvariants hestenes_invariants(const DiracHestenes& d) {
  auto e = even_element(Signature(1, 3), d.a);
  Multivector<double> m(e.sig());
  for (Mask b = 0; b < e.sig().size(); ++b) m[b] = to_double(e[b]);
  return hestenes_invariants(m);
}

}  // namespace spinsurf
