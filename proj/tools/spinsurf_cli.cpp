#include "spinsurf/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

using namespace spinsurf;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Signature parse_signature(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--sig expects p,q");
  try {
    std::size_t a = 0, b = 0;
    int p = std::stoi(s.substr(0, comma), &a), q = std::stoi(s.substr(comma + 1), &b);
    if (a != comma || b != s.size() - comma - 1) throw UsageError("--sig expects p,q");
    return Signature(p, q);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad signature '") + s + "': " + e.what());
  } catch (const std::out_of_range&) {
    throw UsageError("bad signature '" + s + "'");
  }
}

std::optional<std::vector<Mask>> parse_idem(const std::string& s, Signature sig) {
  if (s.empty()) return std::nullopt;
  std::vector<Mask> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    try {
      out.push_back(parse_blade(s.substr(start, end - start), sig.n()));
    } catch (const std::exception& e) {
      throw UsageError("bad idempotent factor '" + s.substr(start, end - start) + "': " + e.what());
    }
    start = end + 1;
  }
  return out;
}

json check(const std::string& name, bool pass, json detail = json::object()) {
  return {{"name", name}, {"pass", pass}, {"detail", std::move(detail)}};
}

bool all_pass(const json& checks) {
  for (auto& c : checks)
    if (!c["pass"].get<bool>()) return false;
  return true;
}

void emit(const json& report, const std::string& out_dir, const std::string& file) {
  std::cout << report.dump(2) << "\n";
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  std::ofstream(fs::path(out_dir) / file) << report.dump(2) << "\n";
}

template <class T>
json format_list(const std::vector<Multivector<T>>& xs) {
  json a = json::array();
  for (auto& x : xs) a.push_back(format(x));
  return a;
}

Idempotent build_idempotent(Signature sig, const std::optional<std::vector<Mask>>& factors) {
  try {
    return primitive_idempotent(sig, factors);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Spin-space basis as listed in the table when the factors are the listed ones.
IdealBasis build_ideal(const Idempotent& idem) {
  const Signature sig = idem.element.sig();
  for (auto& row : four_dim_ideal_table())
    if (row.sig == sig && row.factors == idem.factors) return minimal_left_ideal(idem, listed_ideal_blades(sig));
  return minimal_left_ideal(idem);
}

json ideal_json(const Idempotent& idem, const IdealBasis& ib) {
  const Signature sig = idem.element.sig();
  return {{"signature", sig.str()},
          {"k", commuting_count(sig)},
          {"idempotent_factors", blade_list(idem.factors)},
          {"idempotent", format(idem.element)},
          {"ideal_dimension", ib.basis.size()},
          {"ideal_basis", format_list(ib.basis)},
          {"division_ring_blades", blade_list(ib.divring_blades)},
          {"division_ring", to_string(ib.ring)}};
}

// ---------------------------------------------------------------- commands

int cmd_algebra(const std::string& sig_text) {
  Signature sig = parse_signature(sig_text);
  json r = {{"command", "algebra"}, {"signature", sig.str()}, {"conventions", conventions_json()}};
  r["omega_squared"] = volume_element_square(sig);
  r["printed_table_value"] = volume_square_table(sig);
  r["positivity"] = to_string(positivity_class(sig));
  if (sig.n() % 2) {
    auto odd = classify_odd(sig);
    r["odd_structure"] = odd.tag == OddTag::splits ? "splits" : "complexifies";
    if (odd.central) r["central_idempotents"] = {format(odd.central->first), format(odd.central->second)};
  } else {
    r["odd_structure"] = nullptr;
  }
  r["radon_hurwitz_k"] = commuting_count(sig);
  r["structure"] = algebra_structure(sig);
  emit(r, "", "");
  return 0;
}

int cmd_ideal(const std::string& sig_text, const std::string& idem_text, const std::string& out) {
  Signature sig = parse_signature(sig_text);
  auto idem = build_idempotent(sig, parse_idem(idem_text, sig));
  auto ib = build_ideal(idem);
  json checks = json::array();
  checks.push_back(check("idempotent", is_idempotent(idem.element)));
  checks.push_back(check("primitive", is_primitive(idem.element)));
  for (auto& row : four_dim_ideal_table())
    if (row.sig == sig && row.factors == idem.factors)
      checks.push_back(check("listed_division_ring", ib.ring == row.ring && divring_generated_by(ib, row.generators),
                             {{"generators", blade_list(row.generators)}, {"ring", to_string(row.ring)}}));
  json r = {{"command", "ideal"}, {"conventions", conventions_json()}};
  r.update(ideal_json(idem, ib));
  r["checks"] = checks;
  r["pass"] = all_pass(checks);
  emit(r, out, "ideal.json");
  return r["pass"].get<bool>() ? 0 : 1;
}

int cmd_rep(const std::string& sig_text, const std::string& idem_text, bool complex_ideal, const std::string& out) {
  Signature sig = parse_signature(sig_text);
  json r = {{"command", "rep"}, {"conventions", conventions_json()}};
  json checks = json::array();
  auto compare = [&](const char* name, const std::vector<Matrix<QComplex>>& computed,
                     const std::vector<Matrix<QComplex>>& printed) {
    json ms = json::array();
    for (auto& m : compare_entries(computed, printed))
      ms.push_back({{"generator", m.generator}, {"row", m.row + 1}, {"col", m.col + 1},
                    {"computed", to_json(m.computed)}, {"printed", to_json(m.printed)}});
    checks.push_back(check(std::string("matches_printed_") + name, ms.empty(), {{"mismatches", ms}}));
  };
  json gammas = json::array();
  if (complex_ideal) {
    if (!(sig == Signature(4, 0)) || !idem_text.empty()) throw UsageError("--complex is only defined for --sig 4,0");
    auto rep = cl40_complex_rep();
    for (auto& g : rep.gammas) gammas.push_back(to_json(g));
    r["signature"] = sig.str();
    r["ideal"] = "C (x) Cl(4,0) (1/2)(1+e1)(1/2)(1+i e23)";
    r["basis"] = format_list(rep.basis);
    r["field"] = to_string(rep.field);
    r["dimension"] = rep.dim;
    checks.push_back(check("clifford_relations", satisfies_clifford_relations(rep)));
    compare("cl40-complex", rep.gammas, printed_cl40_basis());
  } else {
    auto idem = build_idempotent(sig, parse_idem(idem_text, sig));
    auto ib = build_ideal(idem);
    auto rep = spinor_rep(ib);
    r.update(ideal_json(idem, ib));
    for (auto& g : rep.gammas) gammas.push_back(to_json(g));
    r["field"] = to_string(rep.field);
    r["dimension"] = rep.dim;
    checks.push_back(check("clifford_relations", satisfies_clifford_relations(rep)));
    std::vector<Matrix<QComplex>> cg;
    for (auto& g : rep.gammas) cg.push_back(to_complex(g));
    if (sig == Signature(3, 1) && idem.factors == std::vector<Mask>{0b0001, 0b1010}) compare("cl31", cg, printed_cl31_basis());
    if (sig == Signature(2, 2) && idem.factors == std::vector<Mask>{0b0101, 0b1010}) compare("cl22", cg, printed_cl22_basis());
  }
  r["gammas"] = gammas;
  r["checks"] = checks;
  r["pass"] = all_pass(checks);
  emit(r, out, "rep.json");
  return r["pass"].get<bool>() ? 0 : 1;
}

int cmd_project(const std::string& case_text, const std::string& element, std::uint64_t seed, const std::string& out) {
  ImmersionCase tag;
  try {
    tag = parse_immersion_case(case_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto d = find_zeta_units(tag);
  QMultivector a(d.sig);
  if (element.empty()) {
    std::mt19937_64 rng(seed);
    a = verify::random_mv(d.sig, rng);
  } else {
    try {
      a = parse_multivector<Rational>(d.sig, element);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad --element: ") + e.what());
    }
  }
  auto q = quaternionic_coordinates(a, d);
  auto [ep, em] = restriction_projectors(d);
  CMultivector ca = complexify(a), plus = ep * ca, minus = em * ca;
  json coords = json::array();
  for (auto& c : q.c) coords.push_back(format(c));
  json checks = json::array();
  checks.push_back(check("reassembly", reassemble(q, d) == a));
  checks.push_back(check("declared_squares", d.squares == zeta_row(tag).declared));
  checks.push_back(check("projector_algebra", projector_algebra_check(d)));
  checks.push_back(check("projection_sum", plus + minus == ca));
  json r = {{"command", "project"},
            {"case", to_string(tag)},
            {"seed", seed},
            {"conventions", conventions_json()},
            {"ambient", d.sig.str()},
            {"surface", d.inner_sig.str()},
            {"zeta1", blade_name(d.zeta1)},
            {"zeta2", blade_name(d.zeta2)},
            {"inner_generators", blade_list({d.inner[0], d.inner[1]})},
            {"squares", {{"zeta1", d.squares.z1}, {"zeta2", d.squares.z2}, {"zeta1zeta2", d.squares.z12}}},
            {"type", to_string(d.type)},
            {"epsilon", d.eps_is_i ? "i" : "1"},
            {"element", format(a)},
            {"coordinates", coords},
            {"projectors", {format(ep), format(em)}},
            {"plus", format(plus)},
            {"minus", format(minus)},
            {"checks", checks},
            {"pass", all_pass(checks)}};
  emit(r, out, "project.json");
  return r["pass"].get<bool>() ? 0 : 1;
}

int cmd_surface(const std::string& config_path, const std::string& out, double tol, const std::string& wirtinger) {
  SurfaceConfig cfg;
  try {
    cfg = load_surface_config(config_path);
    if (tol > 0) cfg.spec.tol = cfg.tol.residual = tol;
    if (!wirtinger.empty()) cfg.spec.conv = parse_wirtinger(wirtinger);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Grid& g = cfg.grid;
  const double path_tol = cfg.tol.path_at(g.h);
  json r = {{"command", "surface"}, {"config", cfg.echo}};
  json conv = conventions_json();
  conv["wirtinger"] = to_string(cfg.spec.conv);
  conv["path_tolerance_rule"] = cfg.tol.path > 0 ? "fixed" : "1e-8 (h/1e-3)^2, at least 1e-8";
  r["conventions"] = conv;
  r["tolerances"] = {{"residual", cfg.tol.residual}, {"path", path_tol},
                     {"conformality", cfg.tol.conformality}, {"minimal_H", cfg.tol.minimal_H},
                     {"relative_H", cfg.tol.relative_H}, {"symmetry", cfg.tol.symmetry}};

  json checks = json::array();
  SpinorGrid sg;
  try {
    sg = build_spinor_grid(cfg.spec, g);
  } catch (const InvalidSpinorData& e) {
    checks.push_back(check("spinor_residual", false, {{"value", e.residual}, {"tolerance", cfg.tol.residual}}));
    r["error"] = std::string("invalid spinor data: ") + e.what();
    r["checks"] = checks;
    r["pass"] = false;
    emit(r, out, "report.json");
    std::cerr << "spinsurf: invalid spinor data: " << e.what() << " (residual " << e.residual << ")\n";
    return 1;
  }
  SurfaceMesh m;
  try {
    m = integrate_immersion(sg, cfg.ambient, path_tol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto cr = curvatures(m, sg);

  checks.push_back(check("spinor_residual", sg.residual <= cfg.tol.residual,
                         {{"value", sg.residual}, {"tolerance", cfg.tol.residual}}));
  checks.push_back(check("path_independence", m.path_defect <= path_tol,
                         {{"value", m.path_defect}, {"tolerance", path_tol}}));
  const std::size_t interior = (g.nx - 2) * (g.ny - 2);
  checks.push_back(check("nondegenerate_metric", cr.excluded < interior,
                         {{"excluded_nodes", cr.excluded}, {"interior_nodes", interior}}));
  checks.push_back(check("conformality", cr.max_conformality <= cfg.tol.conformality,
                         {{"value", cr.max_conformality}, {"tolerance", cfg.tol.conformality}}));
  if (cfg.ambient == Ambient::R13)
    checks.push_back(check("real_coordinates", m.reality_defect <= cfg.tol.conformality,
                           {{"value", m.reality_defect}, {"tolerance", cfg.tol.conformality}}));
  double max_p = 0;
  for (auto& v : sg.p.v) max_p = std::max(max_p, std::abs(v));
  if (max_p == 0) {
    checks.push_back(check("minimal_mean_curvature", cr.max_H_mesh <= cfg.tol.minimal_H,
                           {{"value", cr.max_H_mesh}, {"tolerance", cfg.tol.minimal_H}}));
  } else {
    checks.push_back(check("mean_curvature_formula", cr.max_rel_H <= cfg.tol.relative_H,
                           {{"value", cr.max_rel_H}, {"tolerance", cfg.tol.relative_H}}));
  }
  if (cfg.spec.kind == PotentialKind::sech_revolution && cfg.ambient == Ambient::R40) {
    auto fit = fit_parallels(m);
    checks.push_back(check("revolution_symmetry", fit.max_spread <= cfg.tol.symmetry,
                           {{"value", fit.max_spread}, {"tolerance", cfg.tol.symmetry}}));
  }

  r["results"] = {{"ambient", to_string(m.ambient)},
                  {"grid", {{"x0", g.x0}, {"y0", g.y0}, {"h", g.h}, {"nx", g.nx}, {"ny", g.ny}}},
                  {"spinor_residual", sg.residual},
                  {"grid_residual", sg.grid_residual},
                  {"path_defect", m.path_defect},
                  {"reality_defect", m.reality_defect},
                  {"max_H_mesh", cr.max_H_mesh},
                  {"max_rel_H", cr.max_rel_H},
                  {"max_rel_K", cr.max_rel_K},
                  {"max_conformality", cr.max_conformality},
                  {"metric_ratio", {cr.metric_ratio_min, cr.metric_ratio_max}},
                  {"excluded_nodes", cr.excluded}};
  r["checks"] = checks;
  r["pass"] = all_pass(checks);
  if (!out.empty()) {
    fs::create_directories(out);
    std::ofstream obj(fs::path(out) / "surface.obj"), csv(fs::path(out) / "surface.csv");
    write_obj(obj, m);
    write_csv(csv, m, cr);
    r["files"] = {"surface.obj", "surface.csv", "report.json"};
  }
  emit(r, out, "report.json");
  for (auto& c : checks)
    if (!c["pass"].get<bool>()) std::cerr << "spinsurf: check failed: " << c["name"].get<std::string>() << "\n";
  return r["pass"].get<bool>() ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
  auto checks = run_checks(suite, seed);
  json r = verify_report(suite, seed, checks);
  emit(r, out, "verify.json");
  for (auto& c : checks)
    if (!c.pass) std::cerr << "spinsurf: criterion " << c.id << " failed: " << c.title << "\n";
  return r["pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford algebra spinors and Weierstrass surfaces"};
  app.require_subcommand(1);

  std::string sig, idem, case_tag, config, out, element, wirtinger, suite = "all";
  std::uint64_t seed = default_seed;
  double tol = 0;
  bool complex_ideal = false;

  auto* algebra = app.add_subcommand("algebra", "volume element, positivity, odd structure, Radon-Hurwitz k");
  algebra->add_option("--sig", sig, "signature p,q")->required();

  auto* ideal = app.add_subcommand("ideal", "primitive idempotent and minimal left ideal");
  ideal->add_option("--sig", sig, "signature p,q")->required();
  ideal->add_option("--idem", idem, "idempotent factor blades, e.g. e1,e24");
  ideal->add_option("--out", out, "output directory");

  auto* rep = app.add_subcommand("rep", "matrix representation on a minimal left ideal");
  rep->add_option("--sig", sig, "signature p,q")->required();
  rep->add_option("--idem", idem, "idempotent factor blades, e.g. e1,e24");
  rep->add_flag("--complex", complex_ideal, "complex ideal of Cl(4,0)");
  rep->add_option("--out", out, "output directory");

  auto* project = app.add_subcommand("project", "zeta decomposition and restriction of an element");
  project->add_option("--case", case_tag, "immersion case, e.g. S20-M40")->required();
  project->add_option("--element", element, "multivector, e.g. '1 + 1/2*e12'; random when omitted");
  project->add_option("--seed", seed, "seed for the random element");
  project->add_option("--out", out, "output directory");

  auto* surface = app.add_subcommand("surface", "generate a surface from a JSON config");
  surface->add_option("--config", config, "JSON config")->required();
  surface->add_option("--out", out, "output directory for OBJ, CSV and JSON");
  surface->add_option("--tol", tol, "spinor residual tolerance")->check(CLI::PositiveNumber);
  surface->add_option("--wirtinger", wirtinger, "standard or paper")->check(CLI::IsMember({"standard", "paper"}));

  auto* verify = app.add_subcommand("verify", "run acceptance suites");
  verify->add_option("suite", suite, "algebra, ideals, reps, fierz, dirac, weierstrass or all")
      ->check(CLI::IsMember(verify_suites()));
  verify->add_option("--seed", seed, "seed for randomized checks");
  verify->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*algebra) return cmd_algebra(sig);
    if (*ideal) return cmd_ideal(sig, idem, out);
    if (*rep) return cmd_rep(sig, idem, complex_ideal, out);
    if (*project) return cmd_project(case_tag, element, seed, out);
    if (*surface) return cmd_surface(config, out, tol, wirtinger);
    if (*verify) return cmd_verify(suite, seed, out);
  } catch (const UsageError& e) {
    std::cerr << "spinsurf: usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "spinsurf: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
