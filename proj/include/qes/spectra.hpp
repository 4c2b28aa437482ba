#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qes/linalg.hpp"
#include "qes/models.hpp"
#include "qes/upoly.hpp"

namespace qes {

/// Thrown when an operator does not preserve the flag it is asked to diagonalize.
class FlagViolation : public std::runtime_error {
 public:
  explicit FlagViolation(FlagReport r);
  const FlagReport& report() const { return report_; }

 private:
  FlagReport report_;
};

struct EigenResult {
  std::size_t basis_size = 0;
  /// eigenvalue -> algebraic multiplicity
  std::map<Rational, int> eigenvalues;
  /// Square-free factors without rational roots, with multiplicity. Not necessarily
  /// irreducible over Q; their degrees count toward basis_size.
  std::vector<std::pair<UPoly, int>> irrational_blocks;
  std::optional<std::map<Rational, std::vector<Polynomial>>> eigenfunctions;
};

EigenResult exact_eigenvalues(const DiffOp& L, const CharacteristicVector& f, int n, bool want_eigenfunctions);

/// eigenvalue -> count over P_n (irrational blocks are not listed).
std::map<Rational, int> degeneracy_table(const DiffOp& L, const CharacteristicVector& f, int n);

/// {operator_eigenvalue(p) : f.p <= n} as a multiset.
std::map<Rational, int> predicted_spectrum(const ModelDescriptor& model, int n);

struct QesEscape {
  int degree = 0;               // the power of v that leaves the block
  int image_degree = 0;         // the offending power in its image
  Rational coefficient;
};

struct QesBlock {
  int k = 0;
  QMatrix matrix;  // column j = image of v^j
  UPoly charpoly;  // monic, degree k+1
  RootAnalysis roots;
  std::vector<RootBracket> brackets;  // every real root
  std::optional<QesEscape> escape;    // v^{k+1} image outside <v^0..v^{k+1}>
};

/// Restricts `total` to span{v^0..v^k}, v = t_{radial}. Throws std::domain_error
/// naming a witness term when the span is not invariant.
QesBlock qes_block(const DiffOp& total, std::size_t radial, int k, const Rational& bracket_width);
/// h + delta h for a registered model.
QesBlock qes_block(const ModelDescriptor& model, const QesParams& q, const Rational& bracket_width);

struct CommutantAnsatz {
  int f_degree = 2;
  int g_degree = 1;
  /// Per-slot overrides; key (i, j) with i <= j for f, (i, i) unused for g.
  std::map<std::pair<std::size_t, std::size_t>, int> f_bounds;
  std::map<std::size_t, int> g_bounds;
  std::vector<std::pair<std::size_t, std::size_t>> zero_f;  // f_ij = 0 (i <= j)
  std::vector<std::size_t> zero_g;                          // g_i = 0
};

struct CommutantResult {
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  std::vector<DiffOp> basis;
};

CommutantResult commutant_search(const DiffOp& h, const CommutantAnsatz& ansatz);

nlohmann::json to_json(const EigenResult& r);
nlohmann::json to_json(const QesBlock& b);
nlohmann::json to_json(const RootBracket& b);
nlohmann::json coefficients_json(const UPoly& p);

}  // namespace qes
