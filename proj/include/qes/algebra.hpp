#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qes/flags.hpp"
#include "qes/linalg.hpp"

namespace qes {

struct Generator {
  std::string name;
  DiffOp op;
  bool raising = false;
};

struct GeneratorSet {
  std::string name;
  std::size_t d = 0;
  Rational mark = 0;
  std::vector<Generator> members;

  const Generator& at(const std::string& name) const;
  /// Members without the raising marker, in order.
  GeneratorSet non_raising() const;
  /// Named members in the given order.
  GeneratorSet subset(const std::vector<std::string>& names) const;
};

/// J-_i = d_i, J0_ij = t_i d_j, J0 = sum t_i d_i - n, J+_i = t_i J0.
GeneratorSet gl_generators(std::size_t d, const Rational& n);

/// J1, J2, J3, J4, R0, R1, R2, J0, T0, T1, T2 on (t, u) = (t1, t2); J4 is raising.
GeneratorSet g2_generators(const Rational& n);
/// i-fold commutator [J4, [J4, ... T0]].
DiffOp g2_iterated_commutator(const Rational& n, int i);
/// u d_t^{2-i} J0 (J0+1)...(J0+i-1), i = 0, 1, 2.
DiffOp g2_t_closed_form(const Rational& n, int i);

struct InvarianceReport {
  bool invariant = true;
  int n = 0;
  CharacteristicVector f;
  std::vector<std::pair<std::string, FlagWitness>> escapes;
};

/// Throws std::invalid_argument when the set's mark is not the integer n.
InvarianceReport check_invariance(const GeneratorSet& G, const CharacteristicVector& f, int n);

struct SpanMembership {
  bool in_span = false;
  QVector coefficients;  // over the members, free variables zero
};
SpanMembership span_membership(const DiffOp& L, const std::vector<DiffOp>& basis);

struct CommutatorEntry {
  std::size_t a = 0;
  std::size_t b = 0;
  DiffOp value;
  SpanMembership span;
};

struct CommutationTable {
  std::vector<CommutatorEntry> entries;  // a < b
  bool closed = true;
};

CommutationTable commutation_table(const GeneratorSet& G);

struct DecompositionResult {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  QVector pair_coefficients;
  QVector single_coefficients;
  Rational constant = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  /// dimension of the affine solution space
  std::size_t nullity = 0;
  std::vector<QVector> kernel;  // over (pairs, singles, constant)
  DiffOp residual;
  bool exact() const { return residual.is_zero(); }
};

/// Exact solve of L = sum c_ab G_a G_b + sum c_a G_a + c0 over all members of G.
DecompositionResult decompose_pol2(const DiffOp& L, const GeneratorSet& G);
DiffOp reconstruct(const DecompositionResult& r, const GeneratorSet& G);
/// Whether the coefficient vector (pairs, singles, constant) solves the decomposition.
bool in_solution_space(const DecompositionResult& r, const GeneratorSet& G, const QVector& v);

nlohmann::json to_json(const InvarianceReport& r);
nlohmann::json to_json(const CommutationTable& t, const GeneratorSet& G);
nlohmann::json to_json(const DecompositionResult& r, const GeneratorSet& G);

}  // namespace qes
