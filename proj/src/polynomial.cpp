#include "qes/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace qes {

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t actual)
    : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                            std::to_string(actual)) {}

Polynomial Polynomial::constant(std::size_t dimension, const Rational& c) {
  Polynomial p(dimension);
  p.add_term(Exponents(dimension, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t dimension, std::size_t index, int power) {
  if (index >= dimension) throw DimensionMismatch(dimension, index + 1);
  Exponents e(dimension, 0);
  e[index] = power;
  Polynomial p(dimension);
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::monomial(Exponents exponents, const Rational& c) {
  Polynomial p(exponents.size());
  p.add_term(exponents, c);
  return p;
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != dim_) throw DimensionMismatch(dim_, e.size());
  if (c == 0) return;
  for (int x : e) {
    if (x < 0) throw std::invalid_argument("negative exponent");
  }
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) {
    it->second.canonicalize();  // callers may hand in an unreduced p/q
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  // graded order puts the highest total degree last
  return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first);
}

int Polynomial::weighted_degree(std::span<const int> weights) const {
  if (weights.size() != dim_) throw DimensionMismatch(dim_, weights.size());
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int w = 0;
    for (std::size_t i = 0; i < dim_; ++i) w += weights[i] * e[i];
    best = std::max(best, w);
  }
  return best;
}

Polynomial Polynomial::derivative(std::size_t variable, int order) const {
  if (variable >= dim_) throw DimensionMismatch(dim_, variable + 1);
  Polynomial out(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[variable] < order) continue;
    Rational f = c;
    for (int k = 0; k < order; ++k) f *= e[variable] - k;
    Exponents ne = e;
    ne[variable] -= order;
    out.add_term(ne, f);
  }
  return out;
}

Polynomial Polynomial::derivative(const Exponents& orders) const {
  if (orders.size() != dim_) throw DimensionMismatch(dim_, orders.size());
  Polynomial out = *this;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (orders[i] > 0) out = out.derivative(i, orders[i]);
  }
  return out;
}

void Polynomial::check_dimension(const Polynomial& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch(dim_, other.dim_);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_dimension(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_dimension(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_dimension(b);
  Polynomial out(a.dim_);
  Exponents e(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.dim_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial pow(const Polynomial& p, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative power");
  Polynomial result = Polynomial::constant(p.dimension(), 1);
  Polynomial base = p;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> values) const {
  if (values.size() != dim_) throw DimensionMismatch(dim_, values.size());
  if (values.empty()) return *this;
  const std::size_t target = values.front().dimension();
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (e[i] > 0) term = term * pow(values[i], e[i]);
    }
    out += term;
  }
  return out;
}

std::string monomial_string(const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += 't' + std::to_string(i + 1);
    if (e[i] > 1) s += '^' + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  // highest degree first reads more naturally
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    const bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    const bool is_const = total_degree(e) == 0;
    if (is_const) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += monomial_string(e);
    } else {
      out += to_string(mag) + '*' + monomial_string(e);
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t dim) : s_(text), dim_(dim) {}

  Polynomial parse() {
    Polynomial out(dim_);
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [e, c] = term();
      out.add_term(e, sign * c);
    }
    return out;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + why);
  }
  bool digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

  std::string_view digits() {
    const std::size_t start = pos_;
    while (digit()) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  std::pair<Exponents, Rational> term() {
    Exponents e(dim_, 0);
    Rational c = 1;
    bool have_factor = false;
    while (true) {
      skip();
      if (digit()) {
        const std::size_t start = pos_;
        digits();
        if (pos_ < s_.size() && s_[pos_] == '/') {
          ++pos_;
          digits();
        }
        c *= parse_rational(s_.substr(start, pos_ - start));
      } else if (pos_ < s_.size() && s_[pos_] == 't') {
        ++pos_;
        const int idx = std::stoi(std::string(digits()));
        if (idx < 1 || static_cast<std::size_t>(idx) > dim_) fail("variable index out of range");
        int power = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip();
          power = std::stoi(std::string(digits()));
        }
        e[static_cast<std::size_t>(idx - 1)] += power;
      } else {
        fail("expected coefficient or variable");
      }
      have_factor = true;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!have_factor) fail("empty term");
    return {e, c};
  }

  std::string_view s_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t dimension) {
  return PolyParser(text, dimension).parse();
}

}  // namespace qes
