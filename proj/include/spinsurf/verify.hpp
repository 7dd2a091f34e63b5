#pragma once

#include "spinsurf/dirac_surface.hpp"
#include "spinsurf/io.hpp"

#include <cstdint>
#include <random>

namespace spinsurf {

struct Check {
  std::string id;
  std::string title;
  bool pass = false;
  std::string summary;
  json metrics = json::object();
};

inline json to_json(const Check& c) {
  return json{{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"summary", c.summary}, {"metrics", c.metrics}};
}

namespace verify {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline std::vector<Signature> signatures_up_to(int max_n) {
  std::vector<Signature> out;
  for (int n = 1; n <= max_n; ++n)
    for (int p = 0; p <= n; ++p) out.emplace_back(p, n - p);
  return out;
}

inline QMultivector random_mv(Signature sig, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  QMultivector a(sig);
  for (Mask m = 0; m < sig.size(); ++m) {
    int n = num(rng), d = den(rng);
    a[m] = Rational(n, d);
  }
  return a;
}

// Representation on the listed spin-space basis where one is given.
inline MatrixRep<Rational> table_rep(Signature sig) {
  for (auto& row : four_dim_ideal_table())
    if (row.sig == sig)
      return spinor_rep(minimal_left_ideal(primitive_idempotent(sig, row.factors), listed_ideal_blades(sig)));
  throw std::logic_error("no table row for Cl" + sig.str());
}

inline std::vector<Matrix<QComplex>> complex_gammas(const MatrixRep<Rational>& rep) {
  std::vector<Matrix<QComplex>> out;
  for (auto& g : rep.gammas) out.push_back(to_complex(g));
  return out;
}

// ------------------------------------------------------------------ algebra

inline std::pair<Check, Check> volume_law() {
  Check c{"1", "volume element square against the printed mod-8 table", true, "", json::object()};
  Check s{"1b", "volume element square against the table read at q-p", true, "", json::object()};
  json bad = json::array(), bad_s = json::array();
  std::size_t count = 0;
  for (auto sig : signatures_up_to(8)) {
    ++count;
    const int w2 = volume_element_square(sig);
    if (w2 != volume_square_table(sig)) bad.push_back(sig.str());
    if (w2 != volume_square_table(Signature(sig.q, sig.p))) bad_s.push_back(sig.str());
  }
  c.pass = bad.empty();
  s.pass = bad_s.empty();
  c.metrics = {{"signatures", count}, {"mismatches", bad.size()}, {"mismatched", bad}};
  s.metrics = {{"signatures", count}, {"mismatches", bad_s.size()}, {"mismatched", bad_s}};
  c.summary = std::to_string(bad.size()) + "/" + std::to_string(count) + " signatures disagree (exact)";
  s.summary = std::to_string(bad_s.size()) + "/" + std::to_string(count) + " signatures disagree (exact)";
  return {c, s};
}

inline Check idempotent_suite() {
  Check c{"2", "primitive idempotents and ideal dimensions for n <= 6", true, "", json::object()};
  json bad = json::array();
  std::size_t count = 0;
  for (auto sig : signatures_up_to(6)) {
    ++count;
    auto idem = primitive_idempotent(sig);
    const int k = commuting_count(sig);
    bool ok = int(idem.factors.size()) == k && idem.element * idem.element == idem.element &&
              left_ideal_dimension(idem.element) == (std::size_t(1) << (sig.n() - k));
    if (!ok) bad.push_back(sig.str());
  }
  c.pass = bad.empty();
  c.metrics = {{"signatures", count}, {"failures", bad}};
  c.summary = std::to_string(count - bad.size()) + "/" + std::to_string(count) + " signatures exact";
  return c;
}

// ------------------------------------------------------------------- ideals

inline Check ideal_table() {
  Check c{"3", "four-dimensional ideals: division rings and generators", true, "", json::object()};
  json rows = json::array();
  std::string classes;
  for (auto& row : four_dim_ideal_table()) {
    auto ib = minimal_left_ideal(primitive_idempotent(row.sig, row.factors));
    bool ok = ib.ring == row.ring && ib.divring.size() == row.generators.size() && divring_generated_by(ib, row.generators);
    c.pass = c.pass && ok;
    classes += std::string(classes.empty() ? "" : ",") + to_string(ib.ring);
    rows.push_back({{"signature", row.sig.str()},
                    {"factors", blade_list(row.factors)},
                    {"generators", blade_list(row.generators)},
                    {"ring", to_string(ib.ring)},
                    {"expected", to_string(row.ring)},
                    {"pass", ok}});
  }
  c.metrics = {{"rows", rows}};
  c.summary = "classes " + classes + " (exact)";
  return c;
}

inline Check even_reduction() {
  Check c{"5", "even reduction Cl e = Cl+ e", true, "", json::object()};
  const std::vector<std::pair<Signature, std::vector<Mask>>> rows = {
      {{1, 3}, {0b0001}}, {{3, 1}, {0b0001, 0b1010}}, {{2, 2}, {0b0101, 0b1010}}, {{4, 0}, {0b0001}}, {{0, 4}, {0b0111}}};
  json out = json::array(), bad = json::array();
  for (auto& [sig, factors] : rows) {
    bool ok = even_reduction_check(primitive_idempotent(sig, factors));
    if (!ok) bad.push_back(sig.str());
    out.push_back({{"signature", sig.str()}, {"factors", blade_list(factors)}, {"pass", ok}});
  }
  c.pass = bad.empty();
  c.metrics = {{"rows", out}};
  c.summary = bad.empty() ? std::string("all five rows hold (exact)") : "fails for " + bad.dump() + " (exact)";
  return c;
}

// -------------------------------------------------------------------- reps

inline Check matrix_bases() {
  Check c{"4", "matrix bases reproduced entry-for-entry, Clifford relations", true, "", json::object()};
  auto b1 = table_rep({3, 1}), b3 = table_rep({2, 2});
  auto b2 = cl40_complex_rep();
  struct Row {
    const char* name;
    std::vector<Matrix<QComplex>> computed, printed;
    bool relations;
  };
  std::vector<Row> rows = {{"cl31", complex_gammas(b1), printed_cl31_basis(), satisfies_clifford_relations(b1)},
                           {"cl40-complex", b2.gammas, printed_cl40_basis(), satisfies_clifford_relations(b2)},
                           {"cl22", complex_gammas(b3), printed_cl22_basis(), satisfies_clifford_relations(b3)}};
  json out = json::array();
  std::size_t total = 0;
  for (auto& r : rows) {
    auto mism = compare_entries(r.computed, r.printed);
    total += mism.size();
    json ms = json::array();
    for (auto& m : mism)
      ms.push_back({{"generator", m.generator},
                    {"row", m.row + 1},
                    {"col", m.col + 1},
                    {"computed", to_json(m.computed)},
                    {"printed", to_json(m.printed)}});
    c.pass = c.pass && mism.empty() && r.relations;
    out.push_back({{"basis", r.name}, {"relations", r.relations}, {"mismatches", ms}});
  }
  c.metrics = {{"bases", out}};
  c.summary = std::to_string(total) + " printed entries differ; computed reps satisfy relations: " +
              (rows[0].relations && rows[1].relations && rows[2].relations ? "yes" : "no");
  return c;
}

inline Check zeta_round_trip(std::uint64_t seed) {
  Check c{"6", "quaternionic coordinates round trip and zeta squares", true, "", json::object()};
  std::mt19937_64 rng(seed);
  const int samples = 1000;
  json out = json::array();
  std::size_t failures = 0;
  for (auto tag : all_immersion_cases()) {
    auto d = find_zeta_units(tag);
    int bad = 0;
    for (int t = 0; t < samples; ++t) {
      auto a = random_mv(d.sig, rng);
      if (!(reassemble(quaternionic_coordinates(a, d), d) == a)) ++bad;
    }
    bool sq = d.squares == zeta_row(tag).declared;
    failures += std::size_t(bad) + (sq ? 0 : 1);
    out.push_back({{"case", to_string(tag)},
                   {"round_trip_failures", bad},
                   {"squares", {d.squares.z1, d.squares.z2, d.squares.z12}},
                   {"declared_match", sq}});
  }
  c.pass = failures == 0;
  c.metrics = {{"samples_per_case", samples}, {"cases", out}};
  c.summary = std::to_string(all_immersion_cases().size()) + " cases x " + std::to_string(samples) +
              " samples, " + std::to_string(failures) + " failures (exact)";
  return c;
}

// ------------------------------------------------------------------- fierz

inline Check fierz(std::uint64_t seed) {
  Check c{"7", "Fierz identities and boomerang on random Dirac spinors", true, "", json::object()};
  const double tol = 1e-10;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double jj = 0, kk = 0, jk = 0, boom = 0, imag = 0;
  const int samples = 1000;
  for (int t = 0; t < samples; ++t) {
    Spinor4 psi;
    for (auto& x : psi) x = {g(rng), g(rng)};
    auto cov = bilinear_covariants(psi);
    auto f = fierz_residuals(cov);
    jj = std::max(jj, f.jj);
    kk = std::max(kk, f.kk);
    jk = std::max(jk, f.jk);
    imag = std::max(imag, cov.max_imag);
    auto W = boomerang_outer(psi);
    boom = std::max(boom, max_abs_diff(boomerang(cov), W) / max_abs(W));
  }
  c.pass = jj <= tol && kk <= tol && jk <= tol && boom <= tol;
  c.metrics = {{"samples", samples}, {"tolerance", tol}, {"J2_sigma2_omega2", jj}, {"K2_J2", kk},
               {"JK", jk}, {"boomerang", boom}, {"max_discarded_imag", imag}};
  c.summary = "max rel " + sci(std::max({jj, kk, jk})) + ", boomerang " + sci(boom) + " (tol 1e-10)";
  return c;
}

// ------------------------------------------------------------------- dirac

inline Check dirac_consistency(std::uint64_t seed) {
  Check c{"8", "epsilon table, zero operator and alpha identity", true, "", json::object()};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  auto random_field = [&](const Grid& g) { return sample(g, [&](double, double) { return cplx{n(rng), n(rng)}; }); };
  Grid g{0, 0, 0.1, 8, 7};
  json eps = json::array();
  bool eps_ok = true;
  double cor3 = 0, cor1 = 0;
  for (auto tag : all_immersion_cases()) {
    auto d = find_zeta_units(tag);
    bool is_i = epsilon_for(tag) == cplx(0, 1);
    bool ok = is_i == (d.squares.z12 == -1) && is_i == d.eps_is_i;
    eps_ok = eps_ok && ok;
    eps.push_back({{"case", to_string(tag)}, {"epsilon", is_i ? "i" : "1"}, {"z12", d.squares.z12}, {"pass", ok}});

    SurfaceSpinorField f{g, random_field(g), random_field(g)};
    // alpha = beta = 0 with arbitrary H
    DiracParams q{n(rng), 0, 1, -1, random_field(g), 0};
    q.lambda2 = q.lambda1;
    auto [hp, hm] = dirac_apply(f, q, tag);
    cor3 = std::max({cor3, max_abs(hp), max_abs(hm)});
    // H = 0: D psi+ = alpha psi-, D psi- = alpha psi+
    DiracParams p{n(rng), n(rng), 1, 1, {}, 0};
    auto [ap, am] = dirac_apply(f, p, tag);
    for (std::size_t k = 0; k < g.size(); ++k)
      cor1 = std::max({cor1, std::abs(ap.v[k] - p.alpha() * f.minus.v[k]), std::abs(am.v[k] - p.alpha() * f.plus.v[k])});
  }
  c.pass = eps_ok && cor3 == 0 && cor1 <= 1e-14;
  c.metrics = {{"epsilon", eps}, {"zero_operator_max", cor3}, {"alpha_identity_max", cor1}, {"tolerance", 1e-14}};
  c.summary = std::string("epsilon table ") + (eps_ok ? "agrees" : "disagrees") + "; alpha=beta=0 residual " +
              sci(cor3) + "; H=0 residual " + sci(cor1);
  return c;
}

// ------------------------------------------------------------- weierstrass

inline Check minimal_surface() {
  Check c{"9", "minimal surface from holomorphic data, 200x200, h = 1e-2", true, "", json::object()};
  PotentialSpec s;
  detail::minimal_preset(s);
  Grid g = Grid::centered(200, 1e-2);
  auto sg = build_spinor_grid(s, g);
  auto m = integrate_immersion(sg, Ambient::R40);
  auto cr = curvatures(m, sg);
  c.pass = cr.max_H_mesh <= 1e-3 && cr.max_conformality <= 1e-6 && m.path_defect <= 1e-8;
  c.metrics = {{"max_H_mesh", cr.max_H_mesh},         {"H_tol", 1e-3},
               {"conformality", cr.max_conformality}, {"conformality_tol", 1e-6},
               {"path_defect", m.path_defect},        {"path_tol", 1e-8},
               {"spinor_residual", sg.residual},      {"excluded_nodes", cr.excluded}};
  c.summary = "H " + sci(cr.max_H_mesh) + " (1e-3), conformality " + sci(cr.max_conformality) + " (1e-6), path " +
              sci(m.path_defect) + " (1e-8)";
  return c;
}

inline Grid revolution_grid() {
  const double h = 0.02;
  return {-2, 0, h, 201, std::size_t(std::lround(2 * M_PI / h)) + 1};
}

inline Check revolution_curvature() {
  Check c{"10", "sech-revolution surface: formula |H| against mesh |H|", true, "", json::object()};
  PotentialSpec s;
  s.kind = PotentialKind::sech_revolution;
  Grid g = revolution_grid();
  auto sg = build_spinor_grid(s, g);
  auto m = integrate_immersion(sg, Ambient::R40);
  auto cr = curvatures(m, sg);
  auto fit = fit_parallels(m);
  c.pass = cr.max_rel_H <= 0.02;
  c.metrics = {{"mu", s.mu},
               {"grid", {{"x0", g.x0}, {"h", g.h}, {"nx", g.nx}, {"ny", g.ny}}},
               {"max_rel_H", cr.max_rel_H},
               {"tolerance", 0.02},
               {"zs_residual", sg.residual},
               {"path_defect", m.path_defect},
               {"parallel_radius_spread", fit.max_spread},
               {"metric_ratio", {cr.metric_ratio_min, cr.metric_ratio_max}}};
  c.summary = "max relative deviation " + sci(cr.max_rel_H) + " (tol 0.02)";
  return c;
}

inline Check zs_integration() {
  Check c{"11", "Zakharov-Shabat integration: step halving and residual at step 1e-3", true, "", json::object()};
  ZSProblem pb{SechProfile{1, 0}, cplx(0, 0.5), Wirtinger::paper};
  const ZSState y0 = {1.0, 0.3, 1.0, -0.3};
  const double x0 = -5, x1 = 5;
  const std::size_t steps = 10000;
  double rich = zs_richardson(pb, y0, x0, x1, steps);
  double res = zs_residual(pb, integrate_zs(pb, y0, x0, x1, steps));
  c.pass = rich <= 1e-8 && res <= 1e-8;
  c.metrics = {{"interval", {x0, x1}}, {"step", (x1 - x0) / double(steps)}, {"richardson", rich},
               {"residual", res},      {"tolerance", 1e-8},                   {"wirtinger", "paper"}};
  c.summary = "step halving " + sci(rich) + ", residual " + sci(res) + " (tol 1e-8)";
  return c;
}

inline Check mkdv() {
  Check c{"12", "mKdV soliton residual, derived normalisation and printed form", true, "", json::object()};
  std::vector<long double> xs, ts = {-0.3L, 0.0L, 0.4L};
  for (int k = -20; k <= 20; ++k) xs.push_back(0.1L * k);
  const long double h = 1e-3L;
  long double derived = 0;
  for (long double mu : {0.5L, 1.0L, 1.7L})
    for (long double sign : {1.0L, -1.0L})
      derived = std::max(derived, mkdv_residual(sech_wave(sign * 2 * mu, mu, mu * mu * mu), xs, ts, h).printed);
  auto lit = mkdv_residual(sech_wave(1, 1, -1), xs, ts, h);
  c.pass = derived <= 1e-6L && lit.printed > 1e-3L;
  c.metrics = {{"derived_form", "u = +-2 mu sech(mu x + mu^3 t)"},
               {"derived_residual", double(derived)},
               {"tolerance", 1e-6},
               {"h", double(h)},
               {"printed_form_residual", double(lit.printed)},
               {"printed_form_variant_residual", double(lit.variant)}};
  c.summary = "derived " + sci(double(derived)) + " (tol 1e-6), printed form " + sci(double(lit.printed));
  return c;
}

}  // namespace verify

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"algebra", "ideals", "reps", "fierz", "dirac", "weierstrass", "all"};
  return s;
}

inline json conventions_json() {
  return {{"generators", "e1..ep square to +1, e(p+1)..e(p+q) to -1"},
          {"wirtinger", to_string(Wirtinger::standard)},
          {"zs_wirtinger", to_string(Wirtinger::paper)},
          {"conformal_normalisation", "dz dzbar = dx^2 + dy^2"}};
}

inline std::vector<Check> run_checks(const std::string& suite, std::uint64_t seed) {
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  if (std::find(verify_suites().begin(), verify_suites().end(), suite) == verify_suites().end())
    throw std::invalid_argument("unknown suite '" + suite + "'");
  std::vector<Check> out;
  if (want("algebra")) {
    auto [c1, c1b] = verify::volume_law();
    out.push_back(c1);
    out.push_back(c1b);
    out.push_back(verify::idempotent_suite());
  }
  if (want("ideals")) out.push_back(verify::ideal_table());
  if (want("reps")) out.push_back(verify::matrix_bases());
  if (want("ideals")) out.push_back(verify::even_reduction());
  if (want("reps")) out.push_back(verify::zeta_round_trip(seed + 6));
  if (want("fierz")) out.push_back(verify::fierz(seed + 7));
  if (want("dirac")) out.push_back(verify::dirac_consistency(seed + 8));
  if (want("weierstrass")) {
    out.push_back(verify::minimal_surface());
    out.push_back(verify::revolution_curvature());
    out.push_back(verify::zs_integration());
    out.push_back(verify::mkdv());
  }
  return out;
}

inline json verify_report(const std::string& suite, std::uint64_t seed, const std::vector<Check>& checks) {
  json arr = json::array();
  bool pass = true;
  for (auto& c : checks) {
    arr.push_back(to_json(c));
    pass = pass && c.pass;
  }
  return {{"command", "verify"}, {"suite", suite}, {"seed", seed}, {"conventions", conventions_json()},
          {"checks", arr},       {"pass", pass}};
}

inline constexpr std::uint64_t default_seed = 20240229;

}  // namespace spinsurf
