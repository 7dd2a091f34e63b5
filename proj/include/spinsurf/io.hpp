#pragma once

#include "spinsurf/weierstrass.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace spinsurf {

using json = nlohmann::ordered_json;

// ------------------------------------------------------------ scalar encoding

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const QComplex& z) { return json::array({to_string(z.re), to_string(z.im)}); }

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

template <class T>
json to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json blade_list(const std::vector<Mask>& ms) {
  json a = json::array();
  for (Mask m : ms) a.push_back(blade_name(m));
  return a;
}

inline std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ------------------------------------------------------------------ mesh export

inline void write_obj(std::ostream& os, const SurfaceMesh& m) {
  const Grid& g = m.grid;
  os << "# spinsurf mesh " << g.nx << "x" << g.ny << " ambient " << to_string(m.ambient) << "\n";
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j) {
      os << "v " << fmt17(m.X[0](i, j)) << " " << fmt17(m.X[1](i, j)) << " " << fmt17(m.X[2](i, j)) << "\n";
      os << "# x4 " << fmt17(m.X[3](i, j)) << "\n";
    }
  auto id = [&](std::size_t i, std::size_t j) { return i * g.ny + j + 1; };
  for (std::size_t i = 0; i + 1 < g.nx; ++i)
    for (std::size_t j = 0; j + 1 < g.ny; ++j)
      os << "f " << id(i, j) << " " << id(i + 1, j) << " " << id(i + 1, j + 1) << " " << id(i, j + 1) << "\n";
}

// Boundary nodes carry no curvature values and are written as nan.
inline void write_csv(std::ostream& os, const SurfaceMesh& m, const CurvatureReport& c) {
  const Grid& g = m.grid;
  os << "x,y,X1,X2,X3,X4,u,H_formula,H_mesh,K_formula,K_mesh\n";
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j) {
      const bool interior = i > 0 && j > 0 && i + 1 < g.nx && j + 1 < g.ny;
      auto cv = [&](const RField& f) { return interior ? fmt17(f(i, j)) : std::string("nan"); };
      os << fmt17(g.x(i)) << "," << fmt17(g.y(j));
      for (int k = 0; k < 4; ++k) os << "," << fmt17(m.X[k](i, j));
      os << "," << fmt17(m.conformal(i, j)) << "," << cv(c.H_formula) << "," << cv(c.H_mesh) << ","
         << cv(c.K_formula) << "," << cv(c.K_mesh) << "\n";
    }
}

// ------------------------------------------------------------- surface config

struct Tolerances {
  double residual = 1e-6;
  double path = 0;  // 0: 1e-8 scaled by (h / 1e-3)^2, never below 1e-8
  double conformality = 1e-6;
  double minimal_H = 1e-3;
  double relative_H = 0.02;
  double symmetry = 1e-8;

  double path_at(double h) const {
    if (path > 0) return path;
    double s = h / 1e-3;
    return 1e-8 * std::max(1.0, s * s);
  }
};

struct SurfaceConfig {
  Ambient ambient = Ambient::R40;
  std::string case_tag;  // empty when the ambient was given directly
  std::string preset;    // minimal, planar, plane-wave or empty for sech-revolution
  PotentialSpec spec;
  Grid grid;
  Tolerances tol;
  json echo;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline Ambient ambient_for_case(ImmersionCase c) {
  const Signature a = zeta_row(c).ambient;
  if (a == Signature(4, 0)) return Ambient::R40;
  if (a == Signature(2, 2)) return Ambient::R22;
  if (a == Signature(1, 3)) return Ambient::R13;
  throw ConfigError("no Weierstrass formulae for case " + to_string(c));
}

namespace detail {

inline double num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

inline cplx complex_value(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(std::string("'") + what + "' must be a number or [re, im]");
}

inline void minimal_preset(PotentialSpec& s) {
  s.kind = PotentialKind::zero;
  s.components = {[](double x, double y) { return 0.3 * cplx(x, -y); },
                  [](double x, double y) { return 0.5 * std::exp(cplx(x, -y)); },
                  [](double, double) { return cplx(1); },
                  [](double x, double y) { return -std::exp(0.5 * cplx(x, y)); }};
}

inline void planar_preset(PotentialSpec& s) {
  s.kind = PotentialKind::zero;
  s.components = {[](double, double) { return cplx(1); }, [](double, double) { return cplx(1); },
                  [](double, double) { return cplx(0); }, [](double, double) { return cplx(0); }};
}

// psi = exp(k z + m zb), phi = (k/p) psi with m = -p^2/k
inline void plane_wave_preset(PotentialSpec& s, double p, cplx k) {
  if (p == 0 || k == cplx(0)) throw ConfigError("plane-wave needs nonzero p and k");
  s.kind = PotentialKind::closed_form;
  const cplx m = -p * p / k;
  s.p = [p](double, double) { return cplx(p); };
  auto psi = [k, m](double x, double y) { return std::exp(k * cplx(x, y) + m * cplx(x, -y)); };
  auto phi = [psi, k, p](double x, double y) { return k / p * psi(x, y); };
  s.components = {psi, psi, phi, phi};
}

}  // namespace detail

inline SurfaceConfig parse_surface_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SurfaceConfig c;
  c.echo = j;
  if (j.contains("case") && j.contains("ambient")) throw ConfigError("give either 'case' or 'ambient'");
  try {
    if (j.contains("case")) {
      c.case_tag = j["case"].get<std::string>();
      c.ambient = ambient_for_case(parse_immersion_case(c.case_tag));
    } else if (j.contains("ambient")) {
      c.ambient = parse_ambient(j["ambient"].get<std::string>());
    }
    if (j.contains("wirtinger")) c.spec.conv = parse_wirtinger(j["wirtinger"].get<std::string>());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  if (!j.contains("potential") || !j["potential"].is_object()) throw ConfigError("missing 'potential' object");
  const json& pot = j["potential"];
  if (!pot.contains("kind") || !pot["kind"].is_string()) throw ConfigError("potential needs a 'kind'");
  PotentialKind kind;
  try {
    kind = parse_potential_kind(pot["kind"].get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  const std::string data = pot.value("data", std::string());
  switch (kind) {
    case PotentialKind::zero:
      if (data == "minimal") detail::minimal_preset(c.spec);
      else if (data == "planar") detail::planar_preset(c.spec);
      else throw ConfigError("zero potential needs data 'minimal' or 'planar'");
      c.preset = data;
      break;
    case PotentialKind::closed_form:
      if (data != "plane-wave") throw ConfigError("closed-form potential needs data 'plane-wave'");
      detail::plane_wave_preset(c.spec, detail::num(pot, "p", 0.8),
                                pot.contains("k") ? detail::complex_value(pot["k"], "k") : cplx(0.5, 0.2));
      c.preset = data;
      break;
    case PotentialKind::sech_revolution:
      c.spec.kind = kind;
      c.spec.mu = detail::num(pot, "mu", 1);
      c.spec.t = detail::num(pot, "t", 0);
      if (pot.contains("lambda")) c.spec.lambda = detail::complex_value(pot["lambda"], "lambda");
      if (pot.contains("initial")) {
        const json& y = pot["initial"];
        if (!y.is_array() || y.size() != 4) throw ConfigError("'initial' needs four entries r1, s1, r2, s2");
        for (std::size_t k = 0; k < 4; ++k) c.spec.zs_initial[k] = detail::complex_value(y[k], "initial");
      }
      if (pot.contains("substeps")) {
        if (!pot["substeps"].is_number_unsigned() || pot["substeps"].get<std::size_t>() == 0)
          throw ConfigError("'substeps' must be a positive integer");
        c.spec.zs_substeps = pot["substeps"].get<std::size_t>();
      }
      if (!(c.spec.mu > 0)) throw ConfigError("mu must be positive");
      break;
  }

  if (!j.contains("grid") || !j["grid"].is_object()) throw ConfigError("missing 'grid' object");
  const json& gr = j["grid"];
  for (const char* key : {"nx", "ny"})
    if (!gr.contains(key) || !gr[key].is_number_unsigned()) throw ConfigError(std::string("grid needs integer '") + key + "'");
  c.grid = {detail::num(gr, "x0", 0), detail::num(gr, "y0", 0), detail::num(gr, "h", 0),
            gr["nx"].get<std::size_t>(), gr["ny"].get<std::size_t>()};
  if (!(c.grid.h > 0)) throw ConfigError("grid spacing h must be positive");
  if (c.grid.nx < 3 || c.grid.ny < 3) throw ConfigError("grid needs at least 3x3 nodes");

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
    c.tol.residual = detail::num(t, "residual", c.tol.residual);
    c.tol.path = detail::num(t, "path", c.tol.path);
    c.tol.conformality = detail::num(t, "conformality", c.tol.conformality);
    c.tol.minimal_H = detail::num(t, "minimal_H", c.tol.minimal_H);
    c.tol.relative_H = detail::num(t, "relative_H", c.tol.relative_H);
    c.tol.symmetry = detail::num(t, "symmetry", c.tol.symmetry);
    for (double v : {c.tol.residual, c.tol.conformality, c.tol.minimal_H, c.tol.relative_H, c.tol.symmetry})
      if (!(v > 0)) throw ConfigError("tolerances must be positive");
    if (c.tol.path < 0) throw ConfigError("tolerances must be positive");
  }
  c.spec.tol = c.tol.residual;
  return c;
}

inline SurfaceConfig load_surface_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return parse_surface_config(j);
}

}  // namespace spinsurf
