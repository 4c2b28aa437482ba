#pragma once

#include <utility>
#include <vector>

#include "qes/rational.hpp"

namespace qes {

/// Dense univariate polynomial, coefficients from the constant term upward. The
/// representation is kept trimmed (no trailing zeros); zero is the empty vector.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c);
  /// x - r
  static UPoly linear_root(const Rational& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& x) const;
  double eval(double x) const;
  UPoly derivative() const;
  UPoly monic() const;
  /// Integer coefficients with gcd 1 and positive leading coefficient.
  UPoly primitive() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const Rational& s);
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd.
UPoly gcd(UPoly a, UPoly b);

/// Yun's algorithm: a = lc * prod f_i^{m_i} with f_i square-free, pairwise coprime, monic.
std::vector<std::pair<UPoly, int>> square_free_decomposition(const UPoly& a);

/// Number of distinct real roots in (lo, hi] of a square-free polynomial.
int sturm_count(const std::vector<UPoly>& sturm, const Rational& lo, const Rational& hi);
std::vector<UPoly> sturm_sequence(const UPoly& p);
Rational cauchy_bound(const UPoly& p);

struct RootBracket {
  Rational lo;
  Rational hi;  // lo == hi for an exact rational root
};

/// Disjoint brackets for every real root of a square-free p, each of width <= width.
std::vector<RootBracket> isolate_real_roots(const UPoly& p, const Rational& width);

struct RootAnalysis {
  /// Distinct rational roots with multiplicity, ascending.
  std::vector<std::pair<Rational, int>> rational_roots;
  /// Square-free factors free of rational roots, with the multiplicity they carry.
  std::vector<std::pair<UPoly, int>> irrational_factors;
};

RootAnalysis analyze_roots(const UPoly& p);

std::string to_string(const UPoly& p, const char* var = "x");

}  // namespace qes
