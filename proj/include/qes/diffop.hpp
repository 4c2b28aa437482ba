#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qes/polynomial.hpp"

namespace qes {

/// Polynomial-coefficient differential operator in normal-ordered form
///   L = sum_alpha c_alpha(t) d^alpha
/// (all derivatives to the right). One coefficient per derivative multi-index; zero
/// coefficients are never stored.
class DiffOp {
 public:
  using TermMap = std::map<Exponents, Polynomial, GradedLexLess>;

  explicit DiffOp(std::size_t dimension = 0) : dim_(dimension) {}

  /// Multiplication by p (order zero).
  static DiffOp multiplication(const Polynomial& p);
  static DiffOp identity(std::size_t dimension, const Rational& c = 1);
  /// d^orders with coefficient 1.
  static DiffOp derivative(const Exponents& orders);
  /// d/dt_i (0-based index).
  static DiffOp partial(std::size_t dimension, std::size_t i, int order = 1);
  static DiffOp term(const Polynomial& coefficient, const Exponents& orders);

  std::size_t dimension() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest total derivative order; -1 for the zero operator.
  int order() const;

  Polynomial coefficient(const Exponents& orders) const;
  void add_term(const Exponents& orders, const Polynomial& coefficient);

  DiffOp& operator+=(const DiffOp& other);
  DiffOp& operator-=(const DiffOp& other);
  DiffOp& operator*=(const Rational& c);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const Rational& c) { return a *= c; }
  friend DiffOp operator*(const Rational& c, DiffOp a) { return a *= c; }
  /// Composition L∘M.
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);
  DiffOp operator-() const { return *this * Rational(-1); }

  bool operator==(const DiffOp& other) const { return dim_ == other.dim_ && terms_ == other.terms_; }

 private:
  std::size_t dim_;
  TermMap terms_;
};

Polynomial diffop_apply(const DiffOp& L, const Polynomial& p);
DiffOp diffop_compose(const DiffOp& L, const DiffOp& M);
DiffOp diffop_commutator(const DiffOp& L, const DiffOp& M);
bool diffop_equal(const DiffOp& L, const DiffOp& M);

/// A raw operator word: factors applied right to left as written, each either a
/// multiplication by a polynomial or a derivative. "d t" is the word {d, t}, which is
/// not normal ordered.
using RawFactor = std::variant<Polynomial, Exponents>;
struct RawTerm {
  Rational scale = 1;
  std::vector<RawFactor> factors;
};
using RawOp = std::vector<RawTerm>;

/// Structural equality of raw words, before any normal ordering.
bool raw_equal(const RawOp& a, const RawOp& b);
DiffOp canonicalize(const RawOp& raw, std::size_t dimension);

/// "(2*t1) d1^2 + (-1) d1 d2 + (3)"; a term with no derivative is a multiplication.
std::string to_string(const DiffOp& L);
DiffOp parse_diffop(std::string_view text, std::size_t dimension);

}  // namespace qes
