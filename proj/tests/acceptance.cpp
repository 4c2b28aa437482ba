// One line per acceptance criterion; exit status is the number of failing criteria.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>

#include "qes/algebra.hpp"
#include "qes/cli.hpp"
#include "qes/spectra.hpp"
#include "qes/xcheck.hpp"

using namespace qes;

namespace {

constexpr double kE0Spread = 1e-8;
constexpr double kGaugeResidual = 1e-9;
constexpr double kQesResidual = 1e-7;
constexpr double kSignTestFloor = 1e-3;
constexpr double kCommutantSeconds = 60;
constexpr std::size_t kSamplePoints = 5;
constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool pass = true;
  std::string detail;
};

ModelParams params(int N, Rational omega = 1, Rational nu = Rational(1, 3),
                   CoefficientSet set = CoefficientSet::printed) {
  ModelParams p;
  p.n_bodies = N;
  p.omega = omega;
  p.nu = nu;
  p.nu2 = Rational(1, 2);
  p.mu = Rational(2, 5);
  p.l_tilde = Rational(1, 2);
  p.nu_i.assign(static_cast<std::size_t>(N), nu);
  p.coefficients = set;
  return p;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Verdict spectrum_equivalence() {
  struct Config {
    const char* model;
    int N;
    int n;
  };
  const Config configs[] = {{"calogero", 3, 6}, {"calogero", 4, 6}, {"calogero", 5, 6}, {"bcn", 2, 6},
                            {"bcn", 3, 6},      {"g2", 3, 8},       {"h3", 3, 10},      {"h4", 4, 24}};
  Verdict v;
  int checked = 0;
  double slowest = 0;
  for (const auto& c : configs) {
    for (auto set : {CoefficientSet::printed, CoefficientSet::cartesian}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto md = describe(c.model, params(c.N, Rational(3, 2), Rational(1, 3), set));
      const EigenResult r = exact_eigenvalues(build(md), md.f, c.n, false);
      const bool ok = r.irrational_blocks.empty() && r.eigenvalues == predicted_spectrum(md, c.n);
      slowest = std::max(slowest, seconds_since(t0));
      ++checked;
      if (!ok) {
        v.pass = false;
        v.detail += std::string(" mismatch ") + c.model + " N=" + std::to_string(c.N) + " " + to_string(set) + ";";
      }
    }
  }
  v.detail = std::to_string(checked) + " configurations, slowest " + fmt(slowest) + " s" + v.detail;
  return v;
}

Verdict dimension_law() {
  Verdict v;
  int checked = 0;
  for (std::size_t d = 1; d <= 5; ++d) {
    for (int n = 0; n <= 10; ++n) {
      Integer b;
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n) + d, d);
      const CharacteristicVector ones(d, 1);
      const bool ok = basis_dimension(d, ones, n) == b && Integer(enumerate_basis(d, ones, n).size()) == b;
      ++checked;
      if (!ok) {
        v.pass = false;
        v.detail += " d=" + std::to_string(d) + " n=" + std::to_string(n) + ";";
      }
    }
  }
  v.detail = std::to_string(checked) + " (d, n) pairs against binomial(n+d, d)" + v.detail;
  return v;
}

Verdict flag_preservation() {
  struct Config {
    const char* model;
    int N;
    int n;
  };
  const Config configs[] = {{"on", 3, 6}, {"z2n", 3, 6}, {"calogero", 5, 6}, {"bcn", 3, 6},
                            {"g2", 3, 8}, {"h3", 3, 10}, {"h4", 4, 24}};
  bool registered = true;
  int flips = 0, flips_detected = 0, support = 0, support_detected = 0;
  std::string failures;
  for (const auto& c : configs) {
    const auto md = describe(c.model, params(c.N));
    const DiffOp L = build(md);
    if (!flag_preserved(L, md.f, c.n).preserved) {
      registered = false;
      failures += std::string(" ") + c.model;
    }
    for (const auto& [orders, coef] : L.terms()) {
      int order = 0;
      for (int o : orders) order += o;
      if (order != 2) continue;
      // the literal perturbation: one second-order entry with its sign flipped
      DiffOp flipped = L;
      flipped.add_term(orders, coef * Rational(-2));
      ++flips;
      flips_detected += !flag_preserved(flipped, md.f, c.n).preserved;
      // a perturbation that changes the support: t1^(1 + f.alpha) d^alpha raises every flag
      DiffOp raised = L;
      raised.add_term(orders, Polynomial::variable(md.d, 0, 1 + weighted_degree(orders, md.f)));
      ++support;
      const FlagReport r = flag_preserved(raised, md.f, c.n);
      support_detected += !r.preserved && r.witness.has_value();
      break;
    }
  }
  Verdict v;
  v.pass = registered && flips_detected == flips;
  v.detail = std::string("registered operators ") + (registered ? "preserved" : "NOT preserved:" + failures) +
             "; sign flip of one A entry detected in " + std::to_string(flips_detected) + "/" +
             std::to_string(flips) + " models (sign flips keep the monomial support, so no flag can break)" +
             "; support-changing perturbation gives a witness in " + std::to_string(support_detected) + "/" +
             std::to_string(support);
  return v;
}

Verdict hidden_algebra() {
  Verdict v;
  std::string bad;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (const Rational& n : {Rational(3), Rational(5), Rational(1, 2)}) {
      const GeneratorSet G = gl_generators(d, n);
      if (!commutation_table(G).closed) bad += " gl closure d=" + std::to_string(d) + ";";
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          DiffOp expect = G.at("J0_" + std::to_string(j + 1) + std::to_string(i + 1)).op;
          if (i == j) expect += G.at("J0").op;
          const DiffOp got = diffop_commutator(G.at("J-_" + std::to_string(i + 1)).op,
                                               G.at("J+_" + std::to_string(j + 1)).op);
          if (got != expect) bad += " [J-,J+] d=" + std::to_string(d) + ";";
        }
      }
      if (is_integer(n)) {
        const int ni = static_cast<int>(n.get_num().get_si());
        if (!check_invariance(G, CharacteristicVector(d, 1), ni).invariant) bad += " gl invariance;";
      }
    }
  }
  const Rational scale[3] = {1, -2, 2};
  for (int n : {3, 5}) {
    const GeneratorSet G = g2_generators(n);
    for (int i = 0; i <= 2; ++i) {
      if (g2_iterated_commutator(n, i) != g2_t_closed_form(n, i) * scale[i]) bad += " g2 closed form;";
      for (int j = 0; j <= 2; ++j) {
        if (!diffop_commutator(G.at("T" + std::to_string(i)).op, G.at("T" + std::to_string(j)).op).is_zero()) {
          bad += " [T,T];";
        }
      }
    }
    if (!g2_iterated_commutator(n, 3).is_zero()) bad += " T_3 nonzero;";
    if (!check_invariance(G, {1, 2}, n).invariant) bad += " g2 invariance;";
    if (!commutation_table(G.subset({"J1", "J2", "J3", "J4", "R0", "R1", "R2", "J0"})).closed) bad += " g2 closure;";
  }
  v.pass = bad.empty();
  v.detail = v.pass ? "gl(d+1) d<=3 closed with [J-_i,J+_j] = delta_ij J0 + J0_ji; g2 T closed forms (scalars 1,-2,2), "
                      "T_3 = 0, [T_i,T_j] = 0; P_3 and P_5 invariant"
                    : bad;
  return v;
}

Verdict pol2_decomposition() {
  Verdict v;
  std::string bad;
  int exact = 0;
  for (auto set : {CoefficientSet::printed, CoefficientSet::cartesian}) {
    for (auto [model, N] : {std::pair{"calogero", 3}, {"calogero", 4}, {"bcn", 2}, {"bcn", 3}}) {
      const auto md = describe(model, params(N, Rational(3, 2), Rational(1, 3), set));
      const auto r = decompose_pol2(build(md), gl_generators(md.d, 0).non_raising());
      if (r.exact()) {
        ++exact;
      } else {
        bad += std::string(" ") + model + " N=" + std::to_string(N) + ";";
      }
    }
  }
  const ModelParams p = params(3, Rational(5, 4), Rational(1, 3));
  const auto G = g2_generators(0).subset({"J1", "J2", "J3", "R2"});
  const auto r = decompose_pol2(build(describe("g2", p)), G);
  QVector printed(16 + 4 + 1, 0);
  printed[1 * 4 + 0] = 1;               // J2 J1
  printed[2 * 4 + 0] = 3;               // J3 J1
  printed[2 * 4 + 3] = Rational(-2, 3);  // J3 R2
  printed[16 + 0] = 2 * (3 * (p.mu + p.nu) + 1);
  printed[16 + 1] = 2 * p.omega;
  printed[16 + 2] = 3 * p.omega;
  printed[16 + 3] = -Rational(4, 3) * (1 + 2 * p.mu);
  const bool g2_ok = r.exact() && in_solution_space(r, G, printed);
  if (!g2_ok) bad += " g2;";
  v.pass = bad.empty();
  v.detail = std::to_string(exact) + "/8 Calogero/BC decompositions exact; G2 printed combination " +
             (g2_ok ? "reproduced" : "NOT reproduced") + " (solution space dimension " + std::to_string(r.nullity) +
             ")" + bad;
  return v;
}

Verdict qes_blocks() {
  Verdict v;
  std::string bad;
  int blocks = 0;
  const QesParams base{Rational(1, 4), Rational(1, 2), 0};
  for (auto [model, N] : {std::pair{"calogero", 3}, {"bcn", 2}, {"g2", 3}, {"h3", 3}, {"h4", 4}}) {
    const auto md = describe(model, params(N, Rational(3, 2)));
    for (int k : {1, 2}) {
      QesParams q = base;
      q.k = k;
      try {
        const QesBlock b = qes_block(md, q, Rational(1, 1000));
        if (!b.escape || b.escape->degree != k + 1 || b.escape->image_degree <= k + 1) {
          bad += std::string(" no escape ") + model + ";";
        }
        ++blocks;
      } catch (const std::domain_error& e) {
        bad += std::string(" ") + model + ": " + e.what() + ";";
      }
      QesParams q0 = q;
      q0.a = 0;
      if (!flag_preserved(build(md) + build_qes_delta(md, q0), md.f, 8).preserved) {
        bad += std::string(" a=0 flag ") + model + ";";
      }
    }
    // pure delta h on span{1, v}: (lambda - 2 omega)^2 - 16 a gamma
    QesParams q = base;
    q.k = 1;
    const QesBlock pure = qes_block(build_qes_delta(md, q), md.radial_index, 1, Rational(1, 1000));
    const Rational w2 = 2 * md.params.omega;
    if (pure.charpoly != UPoly({w2 * w2 - 16 * q.a * q.gamma, -2 * w2, 1})) bad += std::string(" charpoly ") + model + ";";
  }
  v.pass = bad.empty();
  v.detail = std::to_string(blocks) + "/10 blocks invariant with a degree-(k+1) escape; a=0 flags preserved; pure "
                                      "delta h charpoly (l-2w)^2-16a*gamma" +
             bad;
  return v;
}

Verdict commutant() {
  Verdict v;
  // Calogero N=3: no degree bound is stated; the smallest nonempty one is f <= 3, g <= 1
  CommutantAnsatz cal;
  cal.f_degree = 3;
  cal.g_degree = 1;
  cal.zero_f = {{0, 0}, {0, 1}};
  cal.zero_g = {0};
  auto t0 = std::chrono::steady_clock::now();
  const DiffOp hc = build(describe("calogero", params(3, Rational(3, 2), Rational(1, 3), CoefficientSet::cartesian)));
  const auto rc = commutant_search(hc, cal);
  const double tc = seconds_since(t0);
  bool cal_ok = !rc.basis.empty() && tc < kCommutantSeconds;
  for (const auto& f : rc.basis) cal_ok = cal_ok && diffop_commutator(hc, f).is_zero();

  // G2 at the stated bounds, both coefficient sets
  CommutantAnsatz g;
  g.f_degree = 2;
  g.g_degree = 2;
  std::size_t g2_found = 0;
  double tg = 0;
  for (auto set : {CoefficientSet::printed, CoefficientSet::cartesian}) {
    t0 = std::chrono::steady_clock::now();
    const DiffOp hg = build(describe("g2", params(3, Rational(3, 2), Rational(1, 3), set)));
    const auto r = commutant_search(hg, g);
    tg = std::max(tg, seconds_since(t0));
    for (const auto& f : r.basis) g2_found += diffop_commutator(hg, f).is_zero();
  }
  // supplementary: the smallest bounds with a nonempty G2 basis
  CommutantAnsatz g3 = g;
  g3.f_degree = 3;
  const DiffOp hg = build(describe("g2", params(3, Rational(3, 2), Rational(1, 3))));
  const auto r3 = commutant_search(hg, g3);

  v.pass = cal_ok && g2_found > 0 && tg < kCommutantSeconds;
  v.detail = "Calogero N=3 (f<=3, g<=1, zeros f_2j, g_2): " + std::to_string(rc.basis.size()) + " commuting in " +
             fmt(tc) + " s; G2 at degree <= 2: " + std::to_string(g2_found) + " solutions in " + fmt(tg) +
             " s; G2 at f<=3, g<=2: " + std::to_string(r3.basis.size());
  return v;
}

Verdict cartesian_cross_check() {
  Verdict v;
  std::string bad;
  double worst_spread = 0;
  for (Rational omega : {Rational(1), Rational(2)}) {
    for (Rational nu : {Rational(1, 3), Rational(2)}) {
      std::vector<CartesianModel> ms;
      for (int N = 2; N <= 4; ++N) ms.push_back(cartesian_model("calogero", params(N, omega, nu)));
      for (int N = 2; N <= 3; ++N) ms.push_back(cartesian_model("bcn", params(N, omega, nu)));
      ms.push_back(cartesian_model("g2", params(3, omega, nu)));
      ms.push_back(cartesian_model("h3", params(3, omega, nu), true));
      for (const auto& m : ms) {
        const ProbeResult r = e0_probe(m, sample_points(m, kSeed, kSamplePoints));
        worst_spread = std::max(worst_spread, r.spread);
        if (r.spread > kE0Spread) bad += " e0 " + m.name + ";";
        if (m.e0_printed && std::abs(r.mean - *m.e0_printed) > kE0Spread * *m.e0_printed) bad += " printed E0 h3;";
      }
    }
  }
  double worst_gauge = 0;
  for (auto [model, N, degree] : {std::tuple{"calogero", 3, 3}, {"bcn", 2, 3}, {"g2", 3, 3}, {"h3", 3, 2}}) {
    const auto m = cartesian_model(model, params(N, Rational(3, 2)), true);
    const auto pts = sample_points(m, kSeed, kSamplePoints);
    const WeightedBasis basis = enumerate_basis(m.descriptor.d, CharacteristicVector(m.descriptor.d, 1), degree);
    for (const auto& e : basis.monomials()) {
      worst_gauge = std::max(worst_gauge, gauge_residual(m, Polynomial::monomial(e, 1), pts).max);
    }
  }
  if (worst_gauge > kGaugeResidual) bad += " gauge;";
  const Tau2Verdict tau = h3_tau2_verdict(params(3, 1), kSeed, kSamplePoints, kGaugeResidual);

  const QesParams q{Rational(1, 4), Rational(1, 2), 1};
  const auto cal = cartesian_model("calogero", params(3));
  const auto pts = sample_points(cal, kSeed, kSamplePoints);
  const QesBlock b = qes_block(cal.descriptor, q, Rational(1, 1000));
  double worst_qes = 0, weakest_flip = INFINITY;
  for (const auto& br : b.brackets) {
    const double lambda = refine_root(b.charpoly, br, Rational("1/1000000000000000000000000"));
    const auto ev = qes_eigenvector(b, lambda);
    worst_qes = std::max(worst_qes, qes_residual(cal, q, lambda, ev, cal.e0_root_sum, pts).max);
    weakest_flip = std::min(weakest_flip, qes_residual(cal, q, lambda, ev, cal.e0_root_sum, pts, 1.1).max);
  }
  if (b.brackets.size() != 2 || worst_qes > kQesResidual || weakest_flip <= kSignTestFloor) bad += " qes;";

  const auto h4 = cartesian_model("h4", params(4));
  const ProbeResult h4e0 = e0_probe(h4, sample_points(h4, kSeed, kSamplePoints));

  v.pass = bad.empty();
  v.detail = "e0 spread " + fmt(worst_spread) + "; gauge " + fmt(worst_gauge) + "; tau2 verdict " + tau.verdict +
             " (printed " + fmt(tau.printed) + ", homogeneous " + fmt(tau.homogeneous) + "); QES k=1 " +
             fmt(worst_qes) + ", +10% quartic " + fmt(weakest_flip) + "; H4 e0 info " + fmt(h4e0.mean) + bad;
  return v;
}

Verdict determinism() {
  const std::vector<std::vector<const char*>> jobs = {
      {"qes", "xcheck", "--model", "h3", "--nu", "1/3", "--tau2-homogeneous", "--seed", "7"},
      {"qes", "xcheck", "--model", "calogero", "--a", "1/4", "--gamma", "1/2", "--k", "1", "--seed", "3"},
      {"qes", "spectrum", "--model", "g2", "--nu", "1/3", "--mu", "2/5", "--degree", "6", "--format", "csv"},
      {"qes", "qes", "--model", "h4", "--a", "1/4", "--gamma", "1/2", "--k", "2", "--format", "text"},
      {"qes", "commutant", "--model", "calogero", "--coefficients", "cartesian", "--degree", "3"}};
  Verdict v;
  for (const auto& argv : jobs) {
    std::ostringstream a, b, ea, eb;
    cli::run(static_cast<int>(argv.size()), argv.data(), a, ea);
    cli::run(static_cast<int>(argv.size()), argv.data(), b, eb);
    if (a.str() != b.str() || a.str().empty()) {
      v.pass = false;
      v.detail += std::string(" ") + argv[1] + " differs;";
    }
  }
  const auto m = cartesian_model("g2", params(3));
  if (sample_points(m, kSeed, 10) != sample_points(m, kSeed, 10)) {
    v.pass = false;
    v.detail += " sampling differs;";
  }
  v.detail = std::to_string(jobs.size()) + " CLI reports byte-identical across runs" + v.detail;
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"spectrum equivalence", spectrum_equivalence},
      {"dimension law", dimension_law},
      {"flag preservation", flag_preservation},
      {"hidden algebra", hidden_algebra},
      {"Pol2 decomposition", pol2_decomposition},
      {"QES blocks", qes_blocks},
      {"commutant discovery", commutant},
      {"Cartesian cross-check", cartesian_cross_check},
      {"determinism", determinism},
  };
  int failures = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("criterion %d %s: %s | %s\n", index, name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
