#include "qes/models.hpp"

#include <functional>
#include <stdexcept>

namespace qes {

namespace {

Exponents second(std::size_t d, std::size_t i, std::size_t j) {
  Exponents e(d, 0);
  ++e[i];
  ++e[j];
  return e;
}

Exponents first(std::size_t d, std::size_t i) {
  Exponents e(d, 0);
  e[i] = 1;
  return e;
}

// Symmetric table with only i <= j given: sum over ordered pairs doubles the mixed terms.
void add_symmetric(DiffOp& L, std::size_t i, std::size_t j, const Polynomial& a) {
  L.add_term(second(L.dimension(), i, j), i == j ? a : a * Rational(2));
}

Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Shorthand for coefficient tables: monomial c * t^e in d variables.
Polynomial mono(const Rational& c, Exponents e) { return Polynomial::monomial(std::move(e), c); }

const std::vector<std::string> kNames = {"on", "z2n", "calogero", "bcn", "g2", "h3", "h4"};

}  // namespace

std::string to_string(CoefficientSet s) { return s == CoefficientSet::printed ? "printed" : "cartesian"; }

CoefficientSet parse_coefficient_set(const std::string& s) {
  if (s == "printed") return CoefficientSet::printed;
  if (s == "cartesian") return CoefficientSet::cartesian;
  throw std::invalid_argument("unknown coefficient set '" + s + "' (printed|cartesian)");
}

const std::vector<std::string>& model_names() { return kNames; }

DiffOp build_on(const ModelParams& params, const Rational& l_tilde) {
  // -2t d^2 + (2 omega t - N - 2 l) d, from t = r^2 with the r^{N-1} radial measure
  const int N = params.n_bodies;
  DiffOp L(1);
  L.add_term({2}, mono(-2, {1}));
  L.add_term({1}, mono(2 * params.omega, {1}) + Polynomial::constant(1, Rational(-N) - 2 * l_tilde));
  return L;
}

DiffOp build_z2n(int N, const std::vector<Rational>& nu_i, const Rational& omega) {
  if (N < 1) throw std::invalid_argument("z2n needs N >= 1");
  if (nu_i.size() != static_cast<std::size_t>(N)) throw std::invalid_argument("z2n needs one nu per coordinate");
  const auto d = static_cast<std::size_t>(N);
  DiffOp L(d);
  for (std::size_t i = 0; i < d; ++i) {
    L.add_term(second(d, i, i), Polynomial::variable(d, i) * Rational(-2));
    L.add_term(first(d, i), Polynomial::variable(d, i) * (2 * omega) + Polynomial::constant(d, -1 - 2 * nu_i[i]));
  }
  return L;
}

DiffOp build_calogero(int N, const ModelParams& params) {
  if (N < 2) throw std::invalid_argument("calogero needs N >= 2");
  const auto d = static_cast<std::size_t>(N - 1);
  // t_0 = 1, t_1 = 0, t_2..t_N are the variables, anything else vanishes
  auto t = [&](int j) -> Polynomial {
    if (j == 0) return Polynomial::constant(d, 1);
    if (j < 2 || j > N) return Polynomial(d);
    return Polynomial::variable(d, static_cast<std::size_t>(j - 2));
  };
  DiffOp L(d);
  for (int i = 2; i <= N; ++i) {
    for (int j = 2; j <= N; ++j) {
      Polynomial a = t(i - 1) * t(j - 1) * frac((N - i + 1) * (1 - j), N);
      for (int l = std::max(1, j - i); j - l - 1 >= 0; ++l) {
        a += t(i + l - 1) * t(j - l - 1) * Rational(2 * l - j + i);
      }
      L.add_term(second(d, static_cast<std::size_t>(i - 2), static_cast<std::size_t>(j - 2)), a);
    }
    const int w = params.coefficients == CoefficientSet::printed ? i - 1 : i;
    Polynomial b = t(i - 2) * (frac(1, N) * (1 + params.nu * N) * ((N - i + 2) * (N - i + 1))) +
                   t(i) * (2 * params.omega * w);
    L.add_term(first(d, static_cast<std::size_t>(i - 2)), b);
  }
  return L;
}

DiffOp build_bcn(int N, const ModelParams& params) {
  if (N < 1) throw std::invalid_argument("bcn needs N >= 1");
  const auto d = static_cast<std::size_t>(N);
  auto s = [&](int j) -> Polynomial {
    if (j == 0) return Polynomial::constant(d, 1);
    if (j < 1 || j > N) return Polynomial(d);
    return Polynomial::variable(d, static_cast<std::size_t>(j - 1));
  };
  DiffOp L(d);
  for (int i = 1; i <= N; ++i) {
    for (int j = 1; j <= N; ++j) {
      Polynomial a(d);
      for (int l = 0; i - l - 1 >= 0; ++l) a += s(i - l - 1) * s(j + l) * Rational(2 * l + 1 + j - i);
      L.add_term(second(d, static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)), a * Rational(-2));
    }
    Rational lower;
    if (params.coefficients == CoefficientSet::printed) {
      lower = (1 + params.nu2 + 2 * params.nu * (N - i)) * (N - i + 1);
    } else {
      lower = -(1 + 2 * params.nu2 + 2 * params.nu * (N - i)) * (N - i + 1);
    }
    L.add_term(first(d, static_cast<std::size_t>(i - 1)), s(i - 1) * lower + s(i) * (2 * params.omega * i));
  }
  return L;
}

DiffOp build_g2(const ModelParams& p) {
  // the printed constants are twice the gauge-rotation values
  const Rational k = p.coefficients == CoefficientSet::printed ? 2 : 1;
  DiffOp L(2);
  L.add_term({2, 0}, mono(1, {1, 0}));
  L.add_term({1, 1}, mono(6, {0, 1}));
  L.add_term({0, 2}, mono(Rational(-4, 3), {2, 1}));
  L.add_term({1, 0}, mono(2 * p.omega, {1, 0}) + Polynomial::constant(2, k * (1 + 3 * (p.mu + p.nu))));
  L.add_term({0, 1}, mono(6 * p.omega, {0, 1}) + mono(-k * Rational(2, 3) * (1 + 2 * p.mu), {2, 0}));
  return L;
}

DiffOp build_h3(const ModelParams& p) {
  DiffOp L(3);
  add_symmetric(L, 0, 0, mono(4, {1, 0, 0}));
  add_symmetric(L, 0, 1, mono(12, {0, 1, 0}));
  add_symmetric(L, 0, 2, mono(20, {0, 0, 1}));
  add_symmetric(L, 1, 1, mono(Rational(-48, 5), {2, 1, 0}) + mono(Rational(45, 2), {0, 0, 1}));
  add_symmetric(L, 1, 2, mono(Rational(16, 15), {1, 2, 0}) + mono(-24, {2, 0, 1}));
  add_symmetric(L, 2, 2, mono(Rational(-64, 3), {1, 1, 1}) + mono(Rational(128, 45), {0, 3, 0}));
  L.add_term({1, 0, 0}, Polynomial::constant(3, 6 + 60 * p.nu) + mono(-4 * p.omega, {1, 0, 0}));
  L.add_term({0, 1, 0}, mono(Rational(-48, 5) * (1 + 5 * p.nu), {2, 0, 0}) + mono(-12 * p.omega, {0, 1, 0}));
  L.add_term({0, 0, 1}, mono(Rational(-64, 15) * (2 + 5 * p.nu), {1, 1, 0}) + mono(-20 * p.omega, {0, 0, 1}));
  return L;
}

DiffOp build_h4(const ModelParams& p) {
  DiffOp L(4);
  add_symmetric(L, 0, 0, mono(4, {1, 0, 0, 0}));
  add_symmetric(L, 0, 1, mono(24, {0, 1, 0, 0}));
  add_symmetric(L, 0, 2, mono(40, {0, 0, 1, 0}));
  add_symmetric(L, 0, 3, mono(60, {0, 0, 0, 1}));
  add_symmetric(L, 1, 1, mono(88, {1, 0, 1, 0}) + mono(8, {5, 1, 0, 0}));
  add_symmetric(L, 1, 2, mono(-4, {3, 2, 0, 0}) + mono(24, {5, 0, 1, 0}) + mono(-8, {0, 0, 0, 1}));
  add_symmetric(L, 1, 3,
                mono(10, {2, 3, 0, 0}) + mono(60, {4, 1, 1, 0}) + mono(40, {5, 0, 0, 1}) + mono(-600, {0, 0, 2, 0}));
  add_symmetric(L, 2, 2, mono(Rational(-38, 3), {1, 3, 0, 0}) + mono(28, {3, 1, 1, 0}) +
                             mono(Rational(-8, 3), {4, 0, 0, 1}));
  add_symmetric(L, 2, 3,
                mono(210, {2, 2, 1, 0}) + mono(60, {3, 1, 0, 1}) + mono(-180, {4, 0, 2, 0}) + mono(30, {0, 4, 0, 0}));
  add_symmetric(L, 3, 3, mono(-2175, {1, 3, 1, 0}) + mono(-450, {2, 2, 0, 1}) + mono(-1350, {3, 1, 2, 0}) +
                             mono(-600, {4, 0, 1, 1}));
  L.add_term({1, 0, 0, 0}, Polynomial::constant(4, 8 * (1 + 30 * p.nu)) + mono(-4 * p.omega, {1, 0, 0, 0}));
  L.add_term({0, 1, 0, 0}, mono(12 * (1 + 10 * p.nu), {5, 0, 0, 0}) + mono(-24 * p.omega, {0, 1, 0, 0}));
  L.add_term({0, 0, 1, 0}, mono(20 * (1 + 6 * p.nu), {3, 1, 0, 0}) + mono(-40 * p.omega, {0, 0, 1, 0}));
  L.add_term({0, 0, 0, 1}, mono(15 * (1 - 30 * p.nu), {2, 2, 0, 0}) + mono(-450 * (1 + 2 * p.nu), {4, 0, 1, 0}) +
                               mono(-60 * p.omega, {0, 0, 0, 1}));
  return L;
}

ModelDescriptor describe(const std::string& name, const ModelParams& params) {
  ModelDescriptor m;
  m.name = name;
  m.params = params;
  const int N = params.n_bodies;
  auto names = [](const char* stem, int from, int count) {
    std::vector<std::string> v;
    for (int i = 0; i < count; ++i) v.push_back(stem + std::to_string(from + i));
    return v;
  };
  if (name == "on") {
    if (N < 1) throw std::invalid_argument("on needs N >= 1");
    m.d = 1;
    m.frequencies = {1};
    m.variables = {"t"};
  } else if (name == "z2n") {
    if (N < 1) throw std::invalid_argument("z2n needs N >= 1");
    if (!params.nu_i.empty() && params.nu_i.size() != static_cast<std::size_t>(N)) {
      throw std::invalid_argument("z2n needs one nu per coordinate");
    }
    m.d = static_cast<std::size_t>(N);
    m.frequencies.assign(m.d, 1);
    m.variables = names("t", 1, N);
  } else if (name == "calogero") {
    if (N < 2) throw std::invalid_argument("calogero needs N >= 2");
    m.d = static_cast<std::size_t>(N - 1);
    m.gauge_scale = 2;
    const int shift = params.coefficients == CoefficientSet::printed ? 1 : 2;
    for (int i = 0; i < N - 1; ++i) m.frequencies.push_back(i + shift);
    m.variables = names("t", 2, N - 1);
  } else if (name == "bcn") {
    if (N < 1) throw std::invalid_argument("bcn needs N >= 1");
    m.d = static_cast<std::size_t>(N);
    for (int i = 1; i <= N; ++i) m.frequencies.push_back(i);
    m.variables = names("s", 1, N);
  } else if (name == "g2") {
    m.d = 2;
    m.f = {1, 2};
    m.frequencies = {1, 3};
    m.variables = {"l1", "l2"};
  } else if (name == "h3") {
    m.d = 3;
    m.f = {1, 2, 3};
    m.gauge_scale = -2;
    m.operator_factor = -2;
    m.frequencies = {1, 3, 5};
    m.variables = names("tau", 1, 3);
  } else if (name == "h4") {
    m.d = 4;
    m.f = {1, 5, 8, 12};
    m.gauge_scale = -2;
    m.operator_factor = -2;
    m.frequencies = {1, 6, 10, 15};
    m.variables = names("tau", 1, 4);
    m.has_cartesian = false;  // the degree 12, 20, 30 invariants are not available
  } else {
    throw std::invalid_argument("unknown model '" + name + "'");
  }
  if (m.f.empty()) m.f.assign(m.d, 1);
  return m;
}

DiffOp build(const ModelDescriptor& m) {
  const ModelParams& p = m.params;
  if (m.name == "on") return build_on(p, p.l_tilde);
  if (m.name == "z2n") {
    std::vector<Rational> nus = p.nu_i.empty() ? std::vector<Rational>(m.d, p.nu) : p.nu_i;
    return build_z2n(p.n_bodies, nus, p.omega);
  }
  if (m.name == "calogero") return build_calogero(p.n_bodies, p);
  if (m.name == "bcn") return build_bcn(p.n_bodies, p);
  if (m.name == "g2") return build_g2(p);
  if (m.name == "h3") return build_h3(p);
  if (m.name == "h4") return build_h4(p);
  throw std::invalid_argument("unknown model '" + m.name + "'");
}

DiffOp build_qes_delta(const ModelDescriptor& m, const QesParams& q) {
  if (q.k < 0) throw std::invalid_argument("qes k must be >= 0");
  const std::size_t d = m.d;
  const std::size_t v = m.radial_index;
  if (v >= d) throw std::invalid_argument("invalid radial variable index");
  Polynomial x = Polynomial::variable(d, v);
  DiffOp L(d);
  L.add_term(first(d, v), (x * x) * (4 * q.a) + Polynomial::constant(d, -4 * q.gamma));
  L.add_term(Exponents(d, 0), x * (-4 * q.a * q.k) + Polynomial::constant(d, 2 * m.params.omega * q.k));
  return L;
}

DiffOp build_gamma_shift(const ModelDescriptor& m, const Rational& gamma) {
  DiffOp L(m.d);
  L.add_term(first(m.d, m.radial_index), Polynomial::constant(m.d, 4 * gamma));
  return L;
}

Rational spectrum_formula(const ModelDescriptor& m, const Exponents& p) {
  if (p.size() != m.d) throw DimensionMismatch(m.d, p.size());
  Rational s = 0;
  for (std::size_t i = 0; i < m.d; ++i) s += m.frequencies[i] * p[i];
  return 2 * m.params.omega * s;
}

Rational operator_eigenvalue(const ModelDescriptor& m, const Exponents& p) {
  return m.operator_factor * spectrum_formula(m, p);
}

}  // namespace qes
