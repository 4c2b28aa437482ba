#pragma once

#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qes/diffop.hpp"

namespace qes {

/// Positive integer weights f; P_n = span{t^p : f.p <= n}.
using CharacteristicVector = std::vector<int>;

void validate(const CharacteristicVector& f);
int weighted_degree(const Exponents& m, const CharacteristicVector& f);

/// Monomials of P_n ordered by weighted degree, ties broken lexicographically on the
/// reversed exponent vector (last variable most significant).
class WeightedBasis {
 public:
  WeightedBasis(std::size_t d, CharacteristicVector f, int n, std::vector<Exponents> monomials);

  std::size_t dimension() const { return d_; }
  const CharacteristicVector& weights() const { return f_; }
  int max_degree() const { return n_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Exponents>& monomials() const { return monomials_; }
  const Exponents& at(std::size_t i) const { return monomials_[i]; }
  int degree_at(std::size_t i) const { return degrees_[i]; }
  std::optional<std::size_t> index_of(const Exponents& m) const;
  /// Half-open index range [begin, end) of monomials with weighted degree exactly m.
  std::pair<std::size_t, std::size_t> level(int m) const;

 private:
  std::size_t d_;
  CharacteristicVector f_;
  int n_;
  std::vector<Exponents> monomials_;
  std::vector<int> degrees_;
  std::map<Exponents, std::size_t> index_;
};

WeightedBasis enumerate_basis(std::size_t d, const CharacteristicVector& f, int n);
/// Lattice-point count by dynamic programming, independent of the enumeration.
Integer basis_dimension(std::size_t d, const CharacteristicVector& f, int n);

/// Column j holds L(m_j) in basis coordinates; anything outside span goes to remainder.
struct OpMatrix {
  WeightedBasis basis;
  std::vector<std::map<std::size_t, Rational>> columns;
  std::vector<Polynomial> remainder;  // per column, zero if the image fits

  Rational entry(std::size_t i, std::size_t j) const;
  bool remainder_empty() const;
  /// Dense submatrix on the index range [begin, end) for rows and columns.
  std::vector<std::vector<Rational>> dense_block(std::size_t begin, std::size_t end) const;
};

OpMatrix matrix_of(const DiffOp& L, const WeightedBasis& basis);

struct FlagWitness {
  Exponents monomial;
  Exponents image_monomial;
  Rational image_coefficient;
  int monomial_degree = 0;
  int image_degree = 0;
};

struct FlagReport {
  bool preserved = true;
  int n_max = 0;
  CharacteristicVector f;
  std::optional<FlagWitness> witness;
};

FlagReport flag_preserved(const DiffOp& L, const CharacteristicVector& f, int n_max);

nlohmann::json to_json(const FlagReport& r);
nlohmann::json exponents_json(const Exponents& e);

}  // namespace qes
