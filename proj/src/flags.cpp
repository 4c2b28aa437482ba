#include "qes/flags.hpp"

#include <algorithm>
#include <stdexcept>

namespace qes {

void validate(const CharacteristicVector& f) {
  if (f.empty()) throw std::invalid_argument("empty characteristic vector");
  for (int w : f) {
    if (w < 1) throw std::invalid_argument("characteristic vector entries must be >= 1");
  }
}

int weighted_degree(const Exponents& m, const CharacteristicVector& f) {
  if (m.size() != f.size()) throw DimensionMismatch(f.size(), m.size());
  int w = 0;
  for (std::size_t i = 0; i < m.size(); ++i) w += m[i] * f[i];
  return w;
}

WeightedBasis::WeightedBasis(std::size_t d, CharacteristicVector f, int n, std::vector<Exponents> monomials)
    : d_(d), f_(std::move(f)), n_(n), monomials_(std::move(monomials)) {
  degrees_.reserve(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    degrees_.push_back(weighted_degree(monomials_[i], f_));
    index_.emplace(monomials_[i], i);
  }
}

std::optional<std::size_t> WeightedBasis::index_of(const Exponents& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::pair<std::size_t, std::size_t> WeightedBasis::level(int m) const {
  auto lo = std::lower_bound(degrees_.begin(), degrees_.end(), m);
  auto hi = std::upper_bound(degrees_.begin(), degrees_.end(), m);
  return {static_cast<std::size_t>(lo - degrees_.begin()), static_cast<std::size_t>(hi - degrees_.begin())};
}

namespace {

void enumerate_rec(std::size_t i, int budget, const CharacteristicVector& f, Exponents& cur,
                   std::vector<Exponents>& out) {
  if (i == f.size()) {
    out.push_back(cur);
    return;
  }
  for (int p = 0; p * f[i] <= budget; ++p) {
    cur[i] = p;
    enumerate_rec(i + 1, budget - p * f[i], f, cur, out);
  }
  cur[i] = 0;
}

}  // namespace

WeightedBasis enumerate_basis(std::size_t d, const CharacteristicVector& f, int n) {
  validate(f);
  if (f.size() != d) throw DimensionMismatch(d, f.size());
  if (n < 0) throw std::invalid_argument("basis degree must be >= 0");
  std::vector<Exponents> ms;
  Exponents cur(d, 0);
  enumerate_rec(0, n, f, cur, ms);
  std::sort(ms.begin(), ms.end(), [&](const Exponents& a, const Exponents& b) {
    const int wa = weighted_degree(a, f), wb = weighted_degree(b, f);
    if (wa != wb) return wa < wb;
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return WeightedBasis(d, f, n, std::move(ms));
}

Integer basis_dimension(std::size_t d, const CharacteristicVector& f, int n) {
  validate(f);
  if (f.size() != d) throw DimensionMismatch(d, f.size());
  if (n < 0) throw std::invalid_argument("basis degree must be >= 0");
  // ways[w] = number of exponent vectors with weighted degree exactly w
  std::vector<Integer> ways(static_cast<std::size_t>(n) + 1, 0);
  ways[0] = 1;
  for (int w : f) {
    for (int s = w; s <= n; ++s) ways[s] += ways[s - w];
  }
  Integer total = 0;
  for (const auto& x : ways) total += x;
  return total;
}

Rational OpMatrix::entry(std::size_t i, std::size_t j) const {
  auto it = columns[j].find(i);
  return it == columns[j].end() ? Rational(0) : it->second;
}

bool OpMatrix::remainder_empty() const {
  return std::all_of(remainder.begin(), remainder.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::vector<std::vector<Rational>> OpMatrix::dense_block(std::size_t begin, std::size_t end) const {
  const std::size_t m = end - begin;
  std::vector<std::vector<Rational>> out(m, std::vector<Rational>(m, 0));
  for (std::size_t j = begin; j < end; ++j) {
    for (const auto& [i, v] : columns[j]) {
      if (i >= begin && i < end) out[i - begin][j - begin] = v;
    }
  }
  return out;
}

OpMatrix matrix_of(const DiffOp& L, const WeightedBasis& basis) {
  if (L.dimension() != basis.dimension()) throw DimensionMismatch(basis.dimension(), L.dimension());
  OpMatrix M{basis, {}, {}};
  M.columns.resize(basis.size());
  M.remainder.assign(basis.size(), Polynomial(basis.dimension()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Polynomial image = diffop_apply(L, Polynomial::monomial(basis.at(j)));
    for (const auto& [e, c] : image.terms()) {
      if (auto i = basis.index_of(e)) {
        M.columns[j].emplace(*i, c);
      } else {
        M.remainder[j].add_term(e, c);
      }
    }
  }
  return M;
}

FlagReport flag_preserved(const DiffOp& L, const CharacteristicVector& f, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  WeightedBasis basis = enumerate_basis(L.dimension(), f, n_max);
  FlagReport r;
  r.n_max = n_max;
  r.f = f;
  for (std::size_t j = 0; j < basis.size() && r.preserved; ++j) {
    Polynomial image = diffop_apply(L, Polynomial::monomial(basis.at(j)));
    for (const auto& [e, c] : image.terms()) {
      const int w = weighted_degree(e, f);
      if (w > basis.degree_at(j)) {
        r.preserved = false;
        r.witness = FlagWitness{basis.at(j), e, c, basis.degree_at(j), w};
        break;
      }
    }
  }
  return r;
}

nlohmann::json exponents_json(const Exponents& e) { return nlohmann::json(e); }

nlohmann::json to_json(const FlagReport& r) {
  nlohmann::json j;
  j["preserved"] = r.preserved;
  j["n_max"] = r.n_max;
  j["f"] = r.f;
  if (r.witness) {
    const auto& w = *r.witness;
    j["witness"] = {
        {"monomial", monomial_string(w.monomial)},
        {"monomial_degree", w.monomial_degree},
        {"image_term", to_string(w.image_coefficient) + "*" + monomial_string(w.image_monomial)},
        {"image_degree", w.image_degree},
    };
  }
  return j;
}

}  // namespace qes
