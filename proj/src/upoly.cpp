#include "qes/upoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qes {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

UPoly UPoly::constant(const Rational& c) { return UPoly({c}); }

UPoly UPoly::linear_root(const Rational& r) { return UPoly({-r, 1}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UPoly::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  return *this * (1 / leading());
}

UPoly UPoly::primitive() const {
  if (c_.empty()) return *this;
  Integer l = 1;
  for (const auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Rational> v;
  Integer g = 0;
  for (const auto& x : c_) {
    Rational y = x * l;
    v.push_back(y);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_num_mpz_t());
  }
  if (v.back() < 0) g = -g;
  for (auto& y : v) y /= g;
  return UPoly(std::move(v));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + b * Rational(-1); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const Rational& s) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x *= s;
  return UPoly(std::move(v));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const Rational lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Rational c = r[static_cast<std::size_t>(k)] / lb;
    if (c == 0) continue;
    q[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? r : r.primitive();  // keeps coefficient growth in check
  }
  return a.monic();
}

std::vector<std::pair<UPoly, int>> square_free_decomposition(const UPoly& a) {
  std::vector<std::pair<UPoly, int>> out;
  if (a.degree() < 1) return out;
  UPoly f = a.monic();
  UPoly fp = f.derivative();
  UPoly g = gcd(f, fp);
  UPoly b = divmod(f, g).first;
  UPoly c = divmod(fp, g).first;
  UPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly h = gcd(b, d);
    if (h.degree() > 0) out.emplace_back(h, i);
    b = divmod(b, h).first;
    c = divmod(d, h).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

namespace {

// primitive() fixes the leading sign; Sturm chains need a positive rescaling only
UPoly positive_rescale(const UPoly& p) {
  UPoly q = p.primitive();
  return sgn(q.leading()) == sgn(p.leading()) ? q : q * Rational(-1);
}

}  // namespace

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> s{positive_rescale(p), positive_rescale(p.derivative())};
  while (s.back().degree() > 0) {
    UPoly r = divmod(s[s.size() - 2], s.back()).second;
    if (r.is_zero()) break;
    s.push_back(positive_rescale(r * Rational(-1)));
  }
  return s;
}

namespace {

int sign_changes(const std::vector<UPoly>& s, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : s) {
    const int v = sgn(p.eval(x));
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

}  // namespace

int sturm_count(const std::vector<UPoly>& s, const Rational& lo, const Rational& hi) {
  return sign_changes(s, lo) - sign_changes(s, hi);
}

Rational cauchy_bound(const UPoly& p) {
  Rational m = 0;
  const Rational l = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p[static_cast<std::size_t>(i)]) / l));
  return 1 + m;
}

std::vector<RootBracket> isolate_real_roots(const UPoly& p, const Rational& width) {
  std::vector<RootBracket> out;
  if (p.degree() < 1) return out;
  const auto s = sturm_sequence(p);
  const Rational B = cauchy_bound(p);
  // work list of half-open intervals (lo, hi]
  std::vector<std::pair<Rational, Rational>> todo{{-B, B}};
  while (!todo.empty()) {
    auto [lo, hi] = todo.back();
    todo.pop_back();
    const int n = sturm_count(s, lo, hi);
    if (n == 0) continue;
    if (n == 1 && hi - lo <= width) {
      if (p.eval(hi) == 0) {
        out.push_back({hi, hi});
      } else {
        out.push_back({lo, hi});
      }
      continue;
    }
    Rational mid = (lo + hi) / 2;
    if (p.eval(mid) == 0 && n == 1) {
      out.push_back({mid, mid});
      continue;
    }
    todo.emplace_back(mid, hi);
    todo.emplace_back(lo, mid);
  }
  std::sort(out.begin(), out.end(), [](const RootBracket& a, const RootBracket& b) { return a.lo < b.lo; });
  return out;
}

RootAnalysis analyze_roots(const UPoly& p) {
  RootAnalysis out;
  for (const auto& [factor, mult] : square_free_decomposition(p)) {
    UPoly f = factor.primitive();
    // a rational root r of an integer primitive f has lc * r integral; brackets of width
    // below 1/lc leave at most one integer candidate inside lc * bracket
    const Rational lc = f.leading();
    UPoly rest = f;
    for (const auto& br : isolate_real_roots(f, 1 / (2 * lc))) {
      if (br.lo == br.hi) {
        out.rational_roots.emplace_back(br.lo, mult);
        rest = divmod(rest, UPoly::linear_root(br.lo)).first;
        continue;
      }
      Rational a = br.lo * lc;
      Integer cand;
      mpz_cdiv_q(cand.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
      Rational r(cand, lc.get_num());
      r.canonicalize();
      if (r > br.lo && r <= br.hi && f.eval(r) == 0) {
        out.rational_roots.emplace_back(r, mult);
        rest = divmod(rest, UPoly::linear_root(r)).first;
      }
    }
    if (rest.degree() > 0) out.irrational_factors.emplace_back(rest.monic(), mult);
  }
  std::sort(out.rational_roots.begin(), out.rational_roots.end());
  return out;
}

std::string to_string(const UPoly& p, const char* var) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Rational m = abs(c);
    if (s.empty()) {
      if (c < 0) s += '-';
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (i == 0 || m != 1) s += to_string(m);
    if (i > 0) {
      if (m != 1) s += '*';
      s += var;
      if (i > 1) s += '^' + std::to_string(i);
    }
  }
  return s;
}

}  // namespace qes
