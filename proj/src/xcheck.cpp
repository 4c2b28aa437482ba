#include "qes/xcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qes {

HyperDual operator/(const HyperDual& x, const HyperDual& y) {
  const double inv = 1 / y.v;
  return x * lift(y, inv, -inv * inv, 2 * inv * inv * inv);
}

HyperDual lift(const HyperDual& x, double f, double df, double d2f) {
  return {f, df * x.a, df * x.b, df * x.ab + d2f * x.a * x.b};
}

HyperDual log_abs(const HyperDual& x) { return lift(x, std::log(std::abs(x.v)), 1 / x.v, -1 / (x.v * x.v)); }

HyperDual exp(const HyperDual& x) {
  const double e = std::exp(x.v);
  return lift(x, e, e, e);
}

namespace {

std::vector<HyperDual> seeded(const Point& x, std::size_t i, std::size_t j) {
  std::vector<HyperDual> v(x.begin(), x.end());
  v[i].a = 1;
  v[j].b = 1;
  return v;
}

std::vector<HyperDual> constants(const Point& x) { return {x.begin(), x.end()}; }

// value, gradient and Laplacian from one evaluation per coordinate
struct Jet {
  double value = 0;
  std::vector<double> grad;
  double lap = 0;
};

Jet jet(const ScalarField& f, const Point& x) {
  Jet J;
  J.grad.resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const HyperDual r = f(seeded(x, k, k));
    J.value = r.v;
    J.grad[k] = r.a;
    J.lap += r.ab;
  }
  return J;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Form {
  std::vector<double> a;
  double nu = 0;
};

HyperDual form_value(const Form& f, const std::vector<HyperDual>& x) {
  HyperDual s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (f.a[i] != 0) s += HyperDual(f.a[i]) * x[i];
  }
  return s;
}

double norm2(const std::vector<double>& a) { return dot(a, a); }

HyperDual square_sum(const std::vector<HyperDual>& x) {
  HyperDual s;
  for (const auto& xi : x) s += xi * xi;
  return s;
}

// e_0..e_n of the inputs
std::vector<HyperDual> elementary(const std::vector<HyperDual>& z) {
  std::vector<HyperDual> e(z.size() + 1);
  e[0] = 1.0;
  for (std::size_t m = 0; m < z.size(); ++m) {
    for (std::size_t k = m + 1; k >= 1; --k) e[k] = e[k] + e[k - 1] * z[m];
  }
  return e;
}

std::vector<HyperDual> centered(const std::vector<HyperDual>& x) {
  HyperDual mean;
  for (const auto& xi : x) mean += xi;
  mean = mean * HyperDual(1.0 / static_cast<double>(x.size()));
  std::vector<HyperDual> y;
  for (const auto& xi : x) y.push_back(xi - mean);
  return y;
}

Form unit(std::size_t dim, std::size_t i, double nu) {
  Form f{std::vector<double>(dim, 0), nu};
  f.a[i] = 1;
  return f;
}

Form pair(std::size_t dim, std::size_t i, std::size_t j, double sj, double nu) {
  Form f{std::vector<double>(dim, 0), nu};
  f.a[i] = 1;
  f.a[j] = sj;
  return f;
}

const double kPhiPlus = (1 + std::sqrt(5.0)) / 2;
const double kPhiMinus = (1 - std::sqrt(5.0)) / 2;

std::vector<Form> h3_forms(double nu) {
  std::vector<Form> fs;
  for (std::size_t i = 0; i < 3; ++i) fs.push_back(unit(3, i, nu));
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    for (double s1 : {1.0, -1.0}) {
      for (double s2 : {1.0, -1.0}) {
        Form f{std::vector<double>(3, 0), nu};
        f.a[i] = 1;
        f.a[j] = s1 * kPhiPlus;
        f.a[k] = s2 * kPhiMinus;
        fs.push_back(f);
      }
    }
  }
  return fs;
}

std::vector<Form> h4_forms(double nu) {
  std::vector<Form> fs;
  for (std::size_t i = 0; i < 4; ++i) fs.push_back(unit(4, i, nu));
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0})
      for (double s3 : {1.0, -1.0}) fs.push_back({{1, s1, s2, s3}, nu});
  // even permutations of (0, 1, phi+, -phi-), one overall sign fixed
  const double base[4] = {0, 1, kPhiPlus, -kPhiMinus};
  std::vector<std::size_t> perm{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) inversions += perm[p] > perm[q];
    if (inversions % 2 != 0) continue;
    for (double s2 : {1.0, -1.0}) {
      for (double s3 : {1.0, -1.0}) {
        Form f{std::vector<double>(4, 0), nu};
        for (std::size_t m = 0; m < 4; ++m) f.a[perm[m]] = base[m];
        f.a[perm[2]] *= s2;
        f.a[perm[3]] *= s3;
        fs.push_back(f);
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return fs;
}

HyperDual h3_tau2(const std::vector<HyperDual>& x, bool homogeneous) {
  const HyperDual q1 = x[0] * x[0], q2 = x[1] * x[1], q3 = x[2] * x[2];
  const HyperDual sum6 = q1 * q1 * q1 + q2 * q2 * q2 + q3 * q3 * q3;
  const HyperDual a24 = q1 * q2 * q2 + q2 * q3 * q3 + q3 * q1 * q1;
  const HyperDual b24 = q1 * q3 * q3 + q2 * q1 * q1 + q3 * q2 * q2;
  HyperDual t = HyperDual(-0.3) * sum6 + HyperDual(0.3 * (2 - 5 * kPhiPlus)) * a24 +
                HyperDual(0.3 * (2 - 5 * kPhiMinus)) * b24;
  return t - (homogeneous ? HyperDual(39.0 / 5) * q1 * q2 * q3 : HyperDual(39.0 / 5));
}

HyperDual h3_tau3(const std::vector<HyperDual>& x) {
  const HyperDual q1 = x[0] * x[0], q2 = x[1] * x[1], q3 = x[2] * x[2];
  auto p = [](const HyperDual& q, int n) {
    HyperDual r = 1.0;
    for (int i = 0; i < n; ++i) r = r * q;
    return r;
  };
  // cyclic sums of q_i^m q_j^n and q_i^m q_k^n over (i, j, k) = (1,2,3), (2,3,1), (3,1,2)
  auto fwd = [&](int m, int n) { return p(q1, m) * p(q2, n) + p(q2, m) * p(q3, n) + p(q3, m) * p(q1, n); };
  auto bwd = [&](int m, int n) { return p(q1, m) * p(q3, n) + p(q2, m) * p(q1, n) + p(q3, m) * p(q2, n); };
  const HyperDual q123 = q1 * q2 * q3;
  return HyperDual(2.0 / 125) * (p(q1, 5) + p(q2, 5) + p(q3, 5)) +
         HyperDual(2.0 / 25 * (1 + 5 * kPhiMinus)) * fwd(4, 1) +
         HyperDual(2.0 / 25 * (1 + 5 * kPhiPlus)) * bwd(4, 1) +
         HyperDual(4.0 / 25 * (1 - 5 * kPhiMinus)) * fwd(3, 2) +
         HyperDual(4.0 / 25 * (1 - 5 * kPhiPlus)) * bwd(3, 2) -
         HyperDual(112.0 / 25) * q123 * (q1 * q1 + q2 * q2 + q3 * q3) +
         HyperDual(212.0 / 25) * q123 * (q2 * q3 + q3 * q1 + q1 * q2);
}

}  // namespace

SecondPartials hyperdual_second_partials(const ScalarField& f, const Point& x, std::size_t i, std::size_t j) {
  if (i >= x.size() || j >= x.size()) throw std::out_of_range("partial index beyond the point dimension");
  const HyperDual r = f(seeded(x, i, j));
  if (!std::isfinite(r.v) || !std::isfinite(r.ab)) throw std::domain_error("evaluation at a singular point");
  return {r.v, r.a, r.b, r.ab};
}

double hyperdual_laplacian(const ScalarField& f, const Point& x) { return jet(f, x).lap; }

CartesianModel cartesian_model(const std::string& name, const ModelParams& params, bool tau2_homogeneous) {
  ModelParams p = params;
  p.coefficients = CoefficientSet::cartesian;
  CartesianModel m;
  m.name = name;
  m.descriptor = describe(name, p);
  const double omega = to_double(p.omega), nu = to_double(p.nu);
  const int N = p.n_bodies;
  std::vector<Form> forms;
  double centrifugal = 0;  // on only: l (l + N - 2) / 2 in front of 1/r^2
  double l_tilde = 0;

  if (name == "on") {
    m.dim = static_cast<std::size_t>(N);
    l_tilde = to_double(p.l_tilde);
    centrifugal = l_tilde * (l_tilde + N - 2) / 2;
    m.invariants = [](const std::vector<HyperDual>& x) { return std::vector<HyperDual>{square_sum(x)}; };
  } else if (name == "z2n") {
    m.dim = static_cast<std::size_t>(N);
    for (std::size_t i = 0; i < m.dim; ++i) {
      const double ni = p.nu_i.empty() ? nu : to_double(p.nu_i.at(i));
      forms.push_back(unit(m.dim, i, ni));
    }
    m.invariants = [](const std::vector<HyperDual>& x) {
      std::vector<HyperDual> t;
      for (const auto& xi : x) t.push_back(xi * xi);
      return t;
    };
  } else if (name == "calogero") {
    m.dim = static_cast<std::size_t>(N);
    for (std::size_t i = 0; i < m.dim; ++i)
      for (std::size_t j = i + 1; j < m.dim; ++j) forms.push_back(pair(m.dim, i, j, -1, nu));
    m.invariants = [](const std::vector<HyperDual>& x) {
      auto e = elementary(centered(x));
      return std::vector<HyperDual>(e.begin() + 2, e.end());
    };
  } else if (name == "bcn") {
    m.dim = static_cast<std::size_t>(N);
    for (std::size_t i = 0; i < m.dim; ++i) {
      for (std::size_t j = i + 1; j < m.dim; ++j) {
        forms.push_back(pair(m.dim, i, j, -1, nu));
        forms.push_back(pair(m.dim, i, j, 1, nu));
      }
      forms.push_back(unit(m.dim, i, to_double(p.nu2)));
    }
    m.invariants = [](const std::vector<HyperDual>& x) {
      std::vector<HyperDual> sq;
      for (const auto& xi : x) sq.push_back(xi * xi);
      auto e = elementary(sq);
      return std::vector<HyperDual>(e.begin() + 1, e.end());
    };
  } else if (name == "g2") {
    m.dim = 3;
    m.center_of_mass_removed = true;
    const double mu = to_double(p.mu);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) forms.push_back(pair(3, i, j, -1, nu));
    for (std::size_t mth = 0; mth < 3; ++mth) {
      Form f{{1, 1, 1}, mu};
      f.a[mth] = -2;
      forms.push_back(f);
    }
    m.invariants = [](const std::vector<HyperDual>& x) {
      auto y = centered(x);
      const HyperDual l1 = -(y[0] * y[0] + y[1] * y[1] + y[0] * y[1]);
      const HyperDual s = y[0] * y[1] * (y[0] + y[1]);
      return std::vector<HyperDual>{l1, s * s};
    };
  } else if (name == "h3") {
    m.dim = 3;
    forms = h3_forms(nu);
    m.e0_printed = 1.5 * omega * (1 + 10 * nu);
    m.tau2_interpretation = tau2_homogeneous ? "homogeneous" : "printed";
    m.invariants = [tau2_homogeneous](const std::vector<HyperDual>& x) {
      return std::vector<HyperDual>{square_sum(x), h3_tau2(x, tau2_homogeneous), h3_tau3(x)};
    };
  } else if (name == "h4") {
    m.dim = 4;
    forms = h4_forms(nu);
    m.e0_printed = 2 * omega * (1 + 30 * nu);
  } else {
    throw std::invalid_argument("no Cartesian form for model '" + name + "'");
  }

  double exponent_sum = l_tilde;
  for (const auto& f : forms) exponent_sum += f.nu;
  m.e0_root_sum = omega * (static_cast<double>(m.dim) / 2 + exponent_sum);

  m.log_psi0 = [forms, omega, l_tilde](const std::vector<HyperDual>& x) {
    const HyperDual r2 = square_sum(x);
    HyperDual s = HyperDual(-omega / 2) * r2;
    if (l_tilde != 0) s += HyperDual(l_tilde / 2) * log_abs(r2);
    for (const auto& f : forms) {
      if (f.nu != 0) s += HyperDual(f.nu) * log_abs(form_value(f, x));
    }
    return s;
  };
  m.potential = [forms, omega, centrifugal](const std::vector<HyperDual>& x) {
    const HyperDual r2 = square_sum(x);
    HyperDual V = HyperDual(omega * omega / 2) * r2;
    if (centrifugal != 0) V += HyperDual(centrifugal) / r2;
    for (const auto& f : forms) {
      const double g = f.nu * (f.nu - 1) * norm2(f.a) / 2;
      if (g == 0) continue;
      const HyperDual w = form_value(f, x);
      V += HyperDual(g) / (w * w);
    }
    return V;
  };
  const bool radial = name == "on";
  m.singular_distance = [forms, radial](const Point& x) {
    double d = radial ? std::sqrt(norm2(x)) : INFINITY;
    for (const auto& f : forms) d = std::min(d, std::abs(dot(f.a, x)) / std::sqrt(norm2(f.a)));
    return d;
  };
  return m;
}

std::vector<Point> sample_points(const CartesianModel& m, std::uint64_t seed, std::size_t count, double floor,
                                 double box) {
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * (count + 1)) throw std::runtime_error("sampling could not avoid the singular locus");
    Point x(m.dim);
    for (auto& xi : x) xi = box * (2 * uniform() - 1);
    if (m.center_of_mass_removed) {
      double mean = 0;
      for (double xi : x) mean += xi;
      mean /= static_cast<double>(x.size());
      for (auto& xi : x) xi -= mean;
    }
    if (m.singular_distance(x) < floor) continue;
    out.push_back(std::move(x));
  }
  return out;
}

ProbeResult e0_probe(const CartesianModel& m, const std::vector<Point>& points) {
  if (points.size() < 3) throw std::invalid_argument("e0_probe needs at least 3 points");
  ProbeResult r;
  for (const auto& x : points) {
    const Jet L = jet(m.log_psi0, x);
    const double V = m.potential(constants(x)).v;
    const double value = -0.5 * (L.lap + norm2(L.grad)) + V;
    if (!std::isfinite(value)) throw std::domain_error("evaluation at a singular point");
    r.values.push_back(value);
    r.mean += value;
  }
  r.mean /= static_cast<double>(points.size());
  for (double v : r.values) r.spread = std::max(r.spread, std::abs(v - r.mean) / std::abs(r.mean));
  return r;
}

std::vector<double> invariants_eval(const CartesianModel& m, const Point& x) {
  if (!m.invariants) throw std::domain_error("no invariant map for model '" + m.name + "'");
  std::vector<double> t;
  for (const auto& h : m.invariants(constants(x))) t.push_back(h.v);
  return t;
}

namespace {

// H(Psi0 e^G F) / (Psi0 e^G) - rhs, with L = log Psi0 + G; returns |residual| / scale
double relative_residual(const Jet& L, const Jet& F, double V, double rhs) {
  const double kinetic = -0.5 * F.lap;
  const double drift = -dot(L.grad, F.grad);
  const double ground = -0.5 * (L.lap + norm2(L.grad)) * F.value;
  const double pot = V * F.value;
  const double scale = std::abs(kinetic) + std::abs(drift) + std::abs(ground) + std::abs(pot) + std::abs(rhs);
  const double res = kinetic + drift + ground + pot - rhs;
  if (!std::isfinite(res)) throw std::domain_error("evaluation at a singular point");
  return scale == 0 ? 0 : std::abs(res) / scale;
}

void push(ResidualReport& r, double v) {
  r.per_point.push_back(v);
  r.max = std::max(r.max, v);
}

}  // namespace

ResidualReport gauge_residual(const CartesianModel& m, const Polynomial& P, const Polynomial& h_image, double e0,
                              const std::vector<Point>& points) {
  if (!m.invariants) throw std::domain_error("no invariant map for model '" + m.name + "'");
  const double c = to_double(m.descriptor.gauge_scale);
  const ScalarField F = [&](const std::vector<HyperDual>& x) {
    const auto t = m.invariants(x);
    return P.evaluate<HyperDual>(t);
  };
  ResidualReport r;
  for (const auto& x : points) {
    const Jet L = jet(m.log_psi0, x);
    const Jet Fj = jet(F, x);
    const std::vector<double> t = invariants_eval(m, x);
    const double image = h_image.evaluate<double>(t);
    const double V = m.potential(constants(x)).v;
    push(r, relative_residual(L, Fj, V, e0 * Fj.value + image / c));
  }
  return r;
}

ResidualReport gauge_residual(const CartesianModel& m, const Polynomial& P, const std::vector<Point>& points) {
  return gauge_residual(m, P, diffop_apply(build(m.descriptor), P), m.e0_root_sum, points);
}

Tau2Verdict h3_tau2_verdict(const ModelParams& params, std::uint64_t seed, std::size_t count, double tol) {
  Tau2Verdict v;
  for (bool homogeneous : {false, true}) {
    const CartesianModel m = cartesian_model("h3", params, homogeneous);
    const auto points = sample_points(m, seed, count);
    double worst = 0;
    for (const char* text : {"t2", "t3", "t1*t2", "t2^2"}) {
      worst = std::max(worst, gauge_residual(m, parse_polynomial(text, 3), points).max);
    }
    (homogeneous ? v.homogeneous : v.printed) = worst;
  }
  const bool p = v.printed <= tol, h = v.homogeneous <= tol;
  v.verdict = p && h ? "both" : p ? "printed" : h ? "homogeneous" : "neither";
  return v;
}

QesPotential qes_potential(const CartesianModel& m, const QesParams& q) {
  const ModelDescriptor& md = m.descriptor;
  const std::size_t v = md.radial_index;
  const DiffOp h = build(md);
  Exponents second_v(md.d, 0), first_v(md.d, 0);
  second_v[v] = 2;
  first_v[v] = 1;
  auto radial_coeffs = [&](const Polynomial& p, int max_power) {
    std::vector<double> c(static_cast<std::size_t>(max_power) + 1, 0);
    for (const auto& [e, coef] : p.terms()) {
      for (std::size_t i = 0; i < md.d; ++i) {
        if (i != v && e[i] != 0) throw std::domain_error("radial block depends on other invariants");
      }
      if (e[v] > max_power) throw std::domain_error("radial coefficient has unexpected degree");
      c[static_cast<std::size_t>(e[v])] = to_double(coef);
    }
    return c;
  };
  const auto A = radial_coeffs(h.coefficient(second_v), 1);
  const auto B = radial_coeffs(h.coefficient(first_v), 1);
  if (A[0] != 0 || A[1] == 0) throw std::domain_error("radial second-order coefficient is not proportional to v");
  const double A1 = A[1], b0 = B[0], b1 = B[1];
  const double c = to_double(md.gauge_scale);
  const double omega = to_double(md.params.omega);
  const double a = to_double(q.a), g = to_double(q.gamma), k = q.k;
  QesPotential U;
  U.kappa = 2 / A1;
  const double K = U.kappa;
  U.coeffs = {
      (-A1 * K * g - A1 * K * K * g * g + K * b0 * g) / c,
      (2 * omega * k + K * b1 * g) / c,
      (-4 * a * k - A1 * K * a + 2 * A1 * K * K * a * g - K * b0 * a) / c,
      (-K * b1 * a) / c,
      (-A1 * K * K * a * a) / c,
  };
  return U;
}

double refine_root(const UPoly& p, const RootBracket& bracket, const Rational& width) {
  if (bracket.lo == bracket.hi) return to_double(bracket.lo);
  const auto s = sturm_sequence(p);
  Rational lo = bracket.lo, hi = bracket.hi;
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (p.eval(mid) == 0) return to_double(mid);
    if (sturm_count(s, lo, mid) > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return to_double((lo + hi) / 2);
}

std::vector<double> qes_eigenvector(const QesBlock& block, double lambda) {
  const std::size_t n = block.matrix.size();
  std::vector<std::vector<double>> M(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M[i][j] = to_double(block.matrix[i][j]) - (i == j ? lambda : 0);
  // complete pivoting for n-1 steps; the column left over is the free one
  std::vector<std::size_t> col(n);
  for (std::size_t j = 0; j < n; ++j) col[j] = j;
  for (std::size_t s = 0; s + 1 < n; ++s) {
    std::size_t pr = s, pc = s;
    for (std::size_t i = s; i < n; ++i)
      for (std::size_t j = s; j < n; ++j)
        if (std::abs(M[i][col[j]]) > std::abs(M[pr][col[pc]])) pr = i, pc = j;
    std::swap(M[s], M[pr]);
    std::swap(col[s], col[pc]);
    const double piv = M[s][col[s]];
    if (piv == 0) break;
    for (std::size_t i = s + 1; i < n; ++i) {
      const double f = M[i][col[s]] / piv;
      for (std::size_t j = s; j < n; ++j) M[i][col[j]] -= f * M[s][col[j]];
    }
  }
  std::vector<double> x(n, 0);
  x[col[n - 1]] = 1;
  for (std::size_t s = n - 1; s-- > 0;) {
    double acc = 0;
    for (std::size_t t = s + 1; t < n; ++t) acc += M[s][col[t]] * x[col[t]];
    x[col[s]] = M[s][col[s]] == 0 ? 0 : -acc / M[s][col[s]];
  }
  double big = 0;
  for (double xi : x) big = std::max(big, std::abs(xi));
  for (auto& xi : x) xi /= big;
  return x;
}

ResidualReport qes_residual(const CartesianModel& m, const QesParams& q, double lambda,
                            const std::vector<double>& eigenvector, double e0, const std::vector<Point>& points,
                            double quadratic_scale) {
  if (!m.invariants) throw std::domain_error("no invariant map for model '" + m.name + "'");
  const QesPotential U = qes_potential(m, q);
  const std::size_t rv = m.descriptor.radial_index;
  const double kappa = U.kappa, a = to_double(q.a), g = to_double(q.gamma);
  const double c = to_double(m.descriptor.gauge_scale);
  const double E = e0 + lambda / c;
  const ScalarField L = [&](const std::vector<HyperDual>& x) {
    const HyperDual v = m.invariants(x)[rv];
    HyperDual G = HyperDual(kappa * a / 2) * v * v;
    if (g != 0) G = G - HyperDual(kappa * g) * log_abs(v);
    return m.log_psi0(x) + G;
  };
  const ScalarField F = [&](const std::vector<HyperDual>& x) {
    const HyperDual v = m.invariants(x)[rv];
    HyperDual acc;
    for (std::size_t i = eigenvector.size(); i-- > 0;) acc = acc * v + HyperDual(eigenvector[i]);
    return acc;
  };
  ResidualReport r;
  for (const auto& x : points) {
    const double v = invariants_eval(m, x)[rv];
    const double Uv = U.coeffs[0] / v + U.coeffs[1] + U.coeffs[2] * v + quadratic_scale * U.coeffs[3] * v * v +
                      U.coeffs[4] * v * v * v;
    const double V = m.potential(constants(x)).v + Uv;
    const Jet Fj = jet(F, x);
    push(r, relative_residual(jet(L, x), Fj, V, E * Fj.value));
  }
  return r;
}

}  // namespace qes
