#include "qes/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qes/algebra.hpp"
#include "qes/spectra.hpp"
#include "qes/xcheck.hpp"

namespace qes::cli {

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kE0Tolerance = 1e-8;
constexpr double kGaugeTolerance = 1e-9;
constexpr double kQesTolerance = 1e-7;
constexpr double kSignTestFloor = 1e-3;

using nlohmann::json;

Rational rat(const char* field, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw BadInput(std::string(field) + ": " + e.what());
  }
}

ModelParams params_of(const JobSpec& job) {
  ModelParams p;
  p.n_bodies = job.n_bodies;
  p.omega = rat("omega", job.omega);
  p.nu = rat("nu", job.nu);
  p.nu2 = rat("nu2", job.nu2);
  p.mu = rat("mu", job.mu);
  p.l_tilde = rat("l_tilde", job.l_tilde);
  for (const auto& s : job.nu_i) p.nu_i.push_back(rat("nu_i", s));
  try {
    p.coefficients = parse_coefficient_set(job.coefficients);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  if (job.model == "z2n" && !p.nu_i.empty() && p.nu_i.size() != static_cast<std::size_t>(p.n_bodies)) {
    throw BadInput("nu_i needs one entry per coordinate");
  }
  return p;
}

ModelDescriptor descriptor_of(const JobSpec& job) {
  if (job.model.empty()) throw BadInput("--model is required");
  ModelParams p = params_of(job);
  if (job.model == "z2n" && p.nu_i.empty()) p.nu_i.assign(static_cast<std::size_t>(std::max(p.n_bodies, 0)), p.nu);
  try {
    return describe(job.model, p);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
}

int degree_of(const JobSpec& job, std::optional<int> fallback = std::nullopt) {
  if (!job.degree && !fallback) throw BadInput("--degree is required for " + job.subcommand);
  const int n = job.degree.value_or(fallback.value_or(0));
  if (n < 0) throw BadInput("--degree must be non-negative");
  return n;
}

QesParams qes_of(const JobSpec& job) {
  if (job.k < 0) throw BadInput("--k must be non-negative");
  return {rat("a", job.a), rat("gamma", job.gamma), job.k};
}

json table_json(const std::map<Rational, int>& t) {
  json out = json::array();
  for (const auto& [v, m] : t) out.push_back({{"value", to_string(v)}, {"multiplicity", m}});
  return out;
}

json descriptor_json(const ModelDescriptor& m) {
  json v = json::array();
  for (const auto& s : m.variables) v.push_back(s);
  return {{"name", m.name},
          {"d", m.d},
          {"f", m.f},
          {"gauge_scale", to_string(m.gauge_scale)},
          {"frequencies", m.frequencies},
          {"operator_factor", to_string(m.operator_factor)},
          {"radial_index", m.radial_index},
          {"variables", v},
          {"coefficients", to_string(m.params.coefficients)}};
}

struct Payload {
  json results;
  bool pass = true;
  bool info = false;
};

Payload run_spectrum(const JobSpec& job) {
  const ModelDescriptor md = descriptor_of(job);
  const int n = degree_of(job);
  Payload out;
  out.results["model"] = descriptor_json(md);
  out.results["degree"] = n;
  const auto predicted = predicted_spectrum(md, n);
  out.results["predicted"] = table_json(predicted);
  try {
    const EigenResult r = exact_eigenvalues(build(md), md.f, n, job.eigenfunctions);
    out.results["computed"] = to_json(r);
    const bool match = r.irrational_blocks.empty() && r.eigenvalues == predicted;
    out.results["matches_formula"] = match;
    out.pass = match;
  } catch (const FlagViolation& e) {
    out.results["flag"] = to_json(e.report());
    out.pass = false;
  }
  return out;
}

Payload run_flag_check(const JobSpec& job) {
  const ModelDescriptor md = descriptor_of(job);
  const int n = degree_of(job);
  const FlagReport r = flag_preserved(build(md), md.f, n);
  Payload out;
  out.results["model"] = descriptor_json(md);
  out.results["flag"] = to_json(r);
  out.pass = r.preserved;
  return out;
}

Payload run_qes(const JobSpec& job) {
  const ModelDescriptor md = descriptor_of(job);
  const QesParams q = qes_of(job);
  Payload out;
  out.results["model"] = descriptor_json(md);
  out.results["qes"] = {{"a", to_string(q.a)}, {"gamma", to_string(q.gamma)}, {"k", q.k}};
  try {
    const QesBlock b = qes_block(md, q, Rational(1, 1000000));
    out.results["block"] = to_json(b);
    out.pass = q.a == 0 || b.escape.has_value();
  } catch (const std::domain_error& e) {
    out.results["error"] = e.what();
    out.pass = false;
  }
  if (q.a == 0) {
    // with a = 0 the deformed operator keeps the whole flag
    const int n = degree_of(job, q.k + 2);
    const FlagReport r = flag_preserved(build(md) + build_qes_delta(md, q), md.f, n);
    out.results["flag"] = to_json(r);
    out.pass = out.pass && r.preserved;
  }
  return out;
}

Payload run_algebra(const JobSpec& job) {
  const ModelDescriptor md = descriptor_of(job);
  const int n = degree_of(job, 3);
  Payload out;
  out.results["model"] = md.name;
  out.results["n"] = n;
  if (md.name == "g2") {
    const GeneratorSet G = g2_generators(n);
    const GeneratorSet core = G.subset({"J1", "J2", "J3", "J4", "R0", "R1", "R2", "J0"});
    const CommutationTable t = commutation_table(core);
    const InvarianceReport inv = check_invariance(G, md.f, n);
    bool closed_forms = true, commuting = true;
    const Rational scale[3] = {1, -2, 2};
    for (int i = 0; i <= 2; ++i) {
      closed_forms = closed_forms && g2_iterated_commutator(n, i) == g2_t_closed_form(n, i) * scale[i];
      for (int j = 0; j <= 2; ++j) {
        commuting = commuting && diffop_commutator(G.at("T" + std::to_string(i)).op,
                                                   G.at("T" + std::to_string(j)).op)
                                     .is_zero();
      }
    }
    const bool nilpotent = g2_iterated_commutator(n, 3).is_zero();
    out.results["algebra"] = "g2";
    out.results["commutation_table"] = to_json(t, core);
    out.results["invariance"] = to_json(inv);
    out.results["t_closed_forms"] = closed_forms;
    out.results["t_commuting"] = commuting;
    out.results["nilpotent_at_3"] = nilpotent;
    out.pass = t.closed && inv.invariant && closed_forms && commuting && nilpotent;
  } else {
    const GeneratorSet G = gl_generators(md.d, n);
    const CommutationTable t = commutation_table(G);
    const InvarianceReport inv = check_invariance(G, CharacteristicVector(md.d, 1), n);
    out.results["algebra"] = "gl" + std::to_string(md.d + 1);
    out.results["commutation_table"] = to_json(t, G);
    out.results["invariance"] = to_json(inv);
    out.pass = t.closed && inv.invariant;
  }
  return out;
}

Payload run_decompose(const JobSpec& job) {
  const ModelDescriptor md = descriptor_of(job);
  const GeneratorSet G = md.name == "g2" ? g2_generators(0).subset({"J1", "J2", "J3", "R2"})
                                         : gl_generators(md.d, 0).non_raising();
  const DecompositionResult r = decompose_pol2(build(md), G);
  Payload out;
  out.results["model"] = descriptor_json(md);
  out.results["decomposition"] = to_json(r, G);
  out.pass = r.exact();
  return out;
}

Payload run_commutant(const JobSpec& job) {
  const ModelDescriptor md = descriptor_of(job);
  CommutantAnsatz ans;
  ans.f_degree = degree_of(job, 2);
  ans.g_degree = job.g_degree;
  if (ans.g_degree < 0) throw BadInput("--g-degree must be non-negative");
  if (md.name == "calogero") {
    // the radial integral carries no second derivatives or first derivative in t2
    for (std::size_t j = 0; j < md.d; ++j) ans.zero_f.emplace_back(0, j);
    ans.zero_g.push_back(0);
  }
  const DiffOp h = build(md);
  const CommutantResult r = commutant_search(h, ans);
  Payload out;
  json zf = json::array(), zg = json::array();
  for (auto [i, j] : ans.zero_f) zf.push_back({i + 1, j + 1});
  for (auto i : ans.zero_g) zg.push_back(i + 1);
  out.results["model"] = descriptor_json(md);
  out.results["ansatz"] = {{"f_degree", ans.f_degree}, {"g_degree", ans.g_degree}, {"zero_f", zf}, {"zero_g", zg}};
  out.results["unknowns"] = r.unknowns;
  out.results["equations"] = r.equations;
  out.results["rank"] = r.rank;
  json basis = json::array();
  bool commute = true;
  for (const auto& f : r.basis) {
    const bool ok = diffop_commutator(h, f).is_zero();
    commute = commute && ok;
    basis.push_back({{"operator", to_string(f)}, {"commutes", ok}});
  }
  out.results["basis"] = basis;
  out.pass = !r.basis.empty() && commute;
  return out;
}

json residual_json(const ResidualReport& r) { return {{"per_point", r.per_point}, {"max", r.max}}; }

Payload run_xcheck(const JobSpec& job) {
  if (job.model.empty()) throw BadInput("--model is required");
  if (job.points < 3) throw BadInput("--points must be at least 3");
  ModelParams p = params_of(job);
  CartesianModel m;
  try {
    m = cartesian_model(job.model, p, job.tau2_homogeneous);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  const auto pts = sample_points(m, job.seed, static_cast<std::size_t>(job.points));
  Payload out;
  json& R = out.results;
  R["model"] = m.name;
  R["params"] = {{"n_bodies", p.n_bodies},   {"omega", job.omega}, {"nu", job.nu},
                 {"nu2", job.nu2},           {"mu", job.mu},       {"l_tilde", job.l_tilde},
                 {"coefficients", "cartesian"}};
  R["seed"] = job.seed;
  R["points"] = pts;
  if (m.tau2_interpretation) R["tau2_interpretation"] = *m.tau2_interpretation;

  const ProbeResult e0 = e0_probe(m, pts);
  bool e0_ok = e0.spread <= kE0Tolerance && std::abs(e0.mean - m.e0_root_sum) <= kE0Tolerance * std::abs(m.e0_root_sum);
  json e0j = {{"values", e0.values},  {"mean", e0.mean},          {"spread", e0.spread},
              {"formula", m.e0_root_sum}, {"tolerance", kE0Tolerance}};
  if (m.e0_printed) {
    e0j["printed"] = *m.e0_printed;
    e0_ok = e0_ok && std::abs(e0.mean - *m.e0_printed) <= kE0Tolerance * std::abs(*m.e0_printed);
  }
  e0j["pass"] = e0_ok;
  R["e0"] = e0j;
  out.pass = e0_ok;
  double worst = 0;

  if (m.invariants) {
    const int degree = degree_of(job, m.name == "h3" ? 2 : 3);
    const WeightedBasis basis = enumerate_basis(m.descriptor.d, CharacteristicVector(m.descriptor.d, 1), degree);
    json mons = json::array();
    double gmax = 0;
    for (const auto& e : basis.monomials()) {
      const Polynomial P = Polynomial::monomial(e, 1);
      const ResidualReport r = gauge_residual(m, P, pts);
      gmax = std::max(gmax, r.max);
      json entry = residual_json(r);
      entry["P"] = to_string(P);
      mons.push_back(entry);
    }
    R["gauge"] = {{"degree", degree}, {"monomials", mons}, {"max", gmax}, {"tolerance", kGaugeTolerance},
                  {"pass", gmax <= kGaugeTolerance}};
    out.pass = out.pass && gmax <= kGaugeTolerance;
    worst = std::max(worst, gmax);
  } else {
    R["gauge"] = nullptr;
    out.info = true;
  }

  const QesParams q = qes_of(job);
  if (m.invariants && (q.k > 0 || q.a != 0 || q.gamma != 0)) {
    QesBlock b;
    try {
      b = qes_block(m.descriptor, q, Rational(1, 1000));
    } catch (const std::domain_error& e) {
      throw BadInput(e.what());
    }
    json roots = json::array();
    bool ok = !b.brackets.empty();
    for (const auto& br : b.brackets) {
      const double lambda = refine_root(b.charpoly, br, Rational("1/1000000000000000000000000"));
      const auto ev = qes_eigenvector(b, lambda);
      const ResidualReport r = qes_residual(m, q, lambda, ev, m.e0_root_sum, pts);
      const double flipped = qes_residual(m, q, lambda, ev, m.e0_root_sum, pts, 1.1).max;
      json entry = residual_json(r);
      entry["lambda"] = lambda;
      entry["energy"] = m.e0_root_sum + lambda / to_double(m.descriptor.gauge_scale);
      entry["eigenvector"] = ev;
      entry["sign_test_max"] = flipped;
      roots.push_back(entry);
      ok = ok && r.max <= kQesTolerance && flipped > kSignTestFloor;
      worst = std::max(worst, r.max);
    }
    const QesPotential U = qes_potential(m, q);
    R["qes"] = {{"a", to_string(q.a)}, {"gamma", to_string(q.gamma)}, {"k", q.k},
                {"kappa", U.kappa},    {"potential", U.coeffs},      {"roots", roots},
                {"tolerance", kQesTolerance}, {"pass", ok}};
    out.pass = out.pass && ok;
  }

  if (m.name == "h3") {
    const Tau2Verdict v = h3_tau2_verdict(p, job.seed, static_cast<std::size_t>(job.points), kGaugeTolerance);
    R["tau2_verdict"] = {{"printed", v.printed}, {"homogeneous", v.homogeneous}, {"verdict", v.verdict}};
  }
  R["max_residual"] = worst;
  return out;
}

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), rows);
  } else if (j.is_array()) {
    if (j.empty()) rows.emplace_back(path, "[]");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

template <class T>
T get_field(const json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw BadInput(std::string("job field '") + key + "' has the wrong type");
  }
}

// rationals may arrive as JSON strings or integers, never floats
std::string rational_field(const json& v, const char* key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw BadInput(std::string("job field '") + key + "' must be a \"p/q\" string or an integer");
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"spectrum", "flag-check", "qes",     "algebra",
                                              "decompose", "commutant",  "xcheck"};
  return names;
}

void apply_job_json(JobSpec& job, const json& j) {
  if (!j.is_object()) throw BadInput("job file must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "subcommand") job.subcommand = get_field<std::string>(v, "subcommand");
    else if (key == "model") job.model = get_field<std::string>(v, "model");
    else if (key == "n_bodies") job.n_bodies = get_field<int>(v, "n_bodies");
    else if (key == "omega") job.omega = rational_field(v, "omega");
    else if (key == "nu") job.nu = rational_field(v, "nu");
    else if (key == "nu2") job.nu2 = rational_field(v, "nu2");
    else if (key == "mu") job.mu = rational_field(v, "mu");
    else if (key == "l_tilde") job.l_tilde = rational_field(v, "l_tilde");
    else if (key == "gamma") job.gamma = rational_field(v, "gamma");
    else if (key == "a") job.a = rational_field(v, "a");
    else if (key == "nu_i") {
      if (!v.is_array()) throw BadInput("job field 'nu_i' must be an array");
      job.nu_i.clear();
      for (const auto& x : v) job.nu_i.push_back(rational_field(x, "nu_i"));
    } else if (key == "k") job.k = get_field<int>(v, "k");
    else if (key == "degree") job.degree = v.is_null() ? std::nullopt : std::optional<int>(get_field<int>(v, "degree"));
    else if (key == "seed") job.seed = get_field<std::uint64_t>(v, "seed");
    else if (key == "points") job.points = get_field<int>(v, "points");
    else if (key == "g_degree") job.g_degree = get_field<int>(v, "g_degree");
    else if (key == "coefficients") job.coefficients = get_field<std::string>(v, "coefficients");
    else if (key == "tau2_homogeneous") job.tau2_homogeneous = get_field<bool>(v, "tau2_homogeneous");
    else if (key == "eigenfunctions") job.eigenfunctions = get_field<bool>(v, "eigenfunctions");
    else if (key == "timing") job.timing = get_field<bool>(v, "timing");
    else if (key == "format") job.format = get_field<std::string>(v, "format");
    else if (key == "out") job.out = get_field<std::string>(v, "out");
    else throw BadInput("unknown job field '" + key + "'");
  }
}

json job_to_json(const JobSpec& job) {
  json j = {{"subcommand", job.subcommand},
            {"model", job.model},
            {"n_bodies", job.n_bodies},
            {"omega", job.omega},
            {"nu", job.nu},
            {"nu2", job.nu2},
            {"mu", job.mu},
            {"nu_i", job.nu_i},
            {"l_tilde", job.l_tilde},
            {"gamma", job.gamma},
            {"a", job.a},
            {"k", job.k},
            {"seed", job.seed},
            {"points", job.points},
            {"g_degree", job.g_degree},
            {"coefficients", job.coefficients},
            {"tau2_homogeneous", job.tau2_homogeneous},
            {"eigenfunctions", job.eigenfunctions},
            {"timing", job.timing},
            {"format", job.format}};
  j["degree"] = job.degree ? json(*job.degree) : json(nullptr);
  return j;
}

Outcome execute(const JobSpec& job) {
  const auto start = std::chrono::steady_clock::now();
  Payload p;
  if (job.subcommand == "spectrum") p = run_spectrum(job);
  else if (job.subcommand == "flag-check") p = run_flag_check(job);
  else if (job.subcommand == "qes") p = run_qes(job);
  else if (job.subcommand == "algebra") p = run_algebra(job);
  else if (job.subcommand == "decompose") p = run_decompose(job);
  else if (job.subcommand == "commutant") p = run_commutant(job);
  else if (job.subcommand == "xcheck") p = run_xcheck(job);
  else throw BadInput("unknown subcommand '" + job.subcommand + "'");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Outcome o;
  const std::string verdict = !p.pass ? "fail" : p.info ? "info" : "pass";
  o.report = {{"schema_version", kSchemaVersion},
              {"job", job_to_json(job)},
              {"results", p.results},
              {"verdict", verdict}};
  o.report["timing"] = job.timing ? json{{"seconds", seconds}} : json(nullptr);
  o.exit_code = p.pass ? 0 : 1;
  return o;
}

std::string render(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream s;
  if (format == "csv") {
    s << "key,value\n";
    for (const auto& [k, v] : rows) s << csv_field(k) << ',' << csv_field(v) << '\n';
  } else if (format == "text") {
    for (const auto& [k, v] : rows) s << k << " = " << v << '\n';
  } else {
    throw BadInput("unknown format '" + format + "'");
  }
  return s.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact spectra, flags, hidden algebras and Cartesian checks for rational (quasi-)exactly-solvable models",
               "qes"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  JobSpec job;
  std::string job_file;
  int degree = 0;
  std::uint64_t seed = 1;

  auto* o_job = app.add_option("--job", job_file, "JSON job file; flags given explicitly override it");
  auto* o_model = app.add_option("--model", job.model, "on, z2n, calogero, bcn, g2, h3, h4");
  auto* o_n = app.add_option("--n-bodies", job.n_bodies, "N for on, z2n, calogero, bcn");
  auto* o_omega = app.add_option("--omega", job.omega, "rational p/q");
  auto* o_nu = app.add_option("--nu", job.nu, "rational p/q");
  auto* o_nu2 = app.add_option("--nu2", job.nu2, "BC_N coordinate coupling, rational p/q");
  auto* o_mu = app.add_option("--mu", job.mu, "G2 second coupling, rational p/q");
  auto* o_nui = app.add_option("--nu-i", job.nu_i, "z2n per-coordinate couplings")->delimiter(',');
  auto* o_lt = app.add_option("--l-tilde", job.l_tilde, "O(N) ground-state exponent, rational p/q");
  auto* o_gamma = app.add_option("--gamma", job.gamma, "QES gamma, rational p/q");
  auto* o_a = app.add_option("--a", job.a, "QES a, rational p/q");
  auto* o_k = app.add_option("--k", job.k, "QES subspace degree");
  auto* o_degree = app.add_option("--degree", degree, "flag degree n (commutant: coefficient degree bound)");
  auto* o_seed = app.add_option("--seed", seed, "sampling seed");
  auto* o_points = app.add_option("--points", job.points, "xcheck sample points");
  auto* o_gdeg = app.add_option("--g-degree", job.g_degree, "commutant first-order coefficient degree bound");
  auto* o_coef = app.add_option("--coefficients", job.coefficients, "printed or cartesian");
  auto* o_fmt = app.add_option("--format", job.format, "json, csv or text");
  auto* o_out = app.add_option("--out", job.out, "write the report here instead of stdout");
  auto* o_tau = app.add_flag("--tau2-homogeneous", job.tau2_homogeneous, "H3: degree-6 reading of tau2");
  auto* o_ef = app.add_flag("--eigenfunctions", job.eigenfunctions, "spectrum: include eigenfunctions");
  auto* o_time = app.add_flag("--timing", job.timing, "record wall time in the report");
  for (const auto& name : subcommands()) app.add_subcommand(name, "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (!o_job->empty()) {
      // explicit flags win over the file, so reload the file first and re-apply them
      JobSpec flags = job;
      std::ifstream in(job_file);
      if (!in) throw BadInput("cannot read job file '" + job_file + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw BadInput(std::string("job file is not valid JSON: ") + e.what());
      }
      job = JobSpec{};
      apply_job_json(job, j);
      auto keep = [&](CLI::Option* o, auto& dst, const auto& src) {
        if (!o->empty()) dst = src;
      };
      keep(o_model, job.model, flags.model);
      keep(o_n, job.n_bodies, flags.n_bodies);
      keep(o_omega, job.omega, flags.omega);
      keep(o_nu, job.nu, flags.nu);
      keep(o_nu2, job.nu2, flags.nu2);
      keep(o_mu, job.mu, flags.mu);
      keep(o_nui, job.nu_i, flags.nu_i);
      keep(o_lt, job.l_tilde, flags.l_tilde);
      keep(o_gamma, job.gamma, flags.gamma);
      keep(o_a, job.a, flags.a);
      keep(o_k, job.k, flags.k);
      keep(o_points, job.points, flags.points);
      keep(o_gdeg, job.g_degree, flags.g_degree);
      keep(o_coef, job.coefficients, flags.coefficients);
      keep(o_fmt, job.format, flags.format);
      keep(o_out, job.out, flags.out);
      keep(o_tau, job.tau2_homogeneous, flags.tau2_homogeneous);
      keep(o_ef, job.eigenfunctions, flags.eigenfunctions);
      keep(o_time, job.timing, flags.timing);
    }
    if (!o_degree->empty()) job.degree = degree;
    if (!o_seed->empty()) job.seed = seed;
    for (const auto* sub : app.get_subcommands()) job.subcommand = sub->get_name();
    if (job.subcommand.empty()) throw BadInput("no subcommand given (one of spectrum, flag-check, qes, algebra, decompose, commutant, xcheck)");
    if (job.format != "json" && job.format != "csv" && job.format != "text") {
      throw BadInput("unknown format '" + job.format + "'");
    }

    const Outcome o = execute(job);
    const std::string text = render(o.report, job.format);
    if (job.out.empty()) {
      out << text;
    } else {
      std::ofstream f(job.out, std::ios::binary);
      if (!f) throw BadInput("cannot write '" + job.out + "'");
      f << text;
    }
    return o.exit_code;
  } catch (const BadInput& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qes::cli
