#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qes/rational.hpp"

namespace qes {

/// Exponent of each variable t_1..t_d in a monomial. Also used for derivative
/// multi-indices.
using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

/// Graded lexicographic order: total degree first, then lexicographic with t_1 most
/// significant.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual);
};

/// Sparse multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexLess>;

  explicit Polynomial(std::size_t dimension = 0) : dim_(dimension) {}

  static Polynomial constant(std::size_t dimension, const Rational& c);
  static Polynomial variable(std::size_t dimension, std::size_t index, int power = 1);
  static Polynomial monomial(Exponents exponents, const Rational& c = 1);

  std::size_t dimension() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  /// -1 for the zero polynomial.
  int degree() const;
  /// Largest f-weighted degree over terms; -1 for zero.
  int weighted_degree(std::span<const int> weights) const;

  Polynomial derivative(std::size_t variable, int order = 1) const;
  Polynomial derivative(const Exponents& orders) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  bool operator==(const Polynomial& other) const { return dim_ == other.dim_ && terms_ == other.terms_; }

  /// Evaluates at a point; T must be constructible from double and closed under
  /// + and *.
  template <class T>
  T evaluate(std::span<const T> point) const;

  /// Substitutes polynomials (all of one dimension) for the variables.
  Polynomial substitute(std::span<const Polynomial> values) const;

 private:
  void check_dimension(const Polynomial& other) const;

  std::size_t dim_;
  TermMap terms_;
};

Polynomial poly_mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, int exponent);

/// Text form: "3/10*t1^2*t2 - t3 + 1". Variables are 1-based.
std::string to_string(const Polynomial& p);
std::string monomial_string(const Exponents& e);
Polynomial parse_polynomial(std::string_view text, std::size_t dimension);

template <class T>
T Polynomial::evaluate(std::span<const T> point) const {
  if (point.size() != dim_) throw DimensionMismatch(dim_, point.size());
  std::vector<int> max_power(dim_, 0);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < dim_; ++i) max_power[i] = std::max(max_power[i], e[i]);
  }
  std::vector<std::vector<T>> powers(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    powers[i].reserve(static_cast<std::size_t>(max_power[i]) + 1);
    powers[i].push_back(T(1.0));
    for (int k = 1; k <= max_power[i]; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  T sum(0.0);
  for (const auto& [e, c] : terms_) {
    T term(to_double(c));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (e[i] != 0) term = term * powers[i][static_cast<std::size_t>(e[i])];
    }
    sum = sum + term;
  }
  return sum;
}

}  // namespace qes
