#include "qes/spectra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qes {

namespace {

std::string flag_message(const FlagReport& r) {
  std::ostringstream os;
  os << "operator does not preserve the flag";
  if (r.witness) {
    os << ": " << monomial_string(r.witness->monomial) << " -> " << to_string(r.witness->image_coefficient) << "*"
       << monomial_string(r.witness->image_monomial);
  }
  return os.str();
}

QMatrix dense(const OpMatrix& M) {
  const std::size_t n = M.basis.size();
  QMatrix a = zero_matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [i, v] : M.columns[j]) a[i][j] = v;
  }
  return a;
}

Polynomial from_coords(const WeightedBasis& B, const QVector& v) {
  Polynomial p(B.dimension());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) p.add_term(B.at(i), v[i]);
  }
  return p;
}

void normalize_first(QVector& v) {
  for (const auto& x : v) {
    if (x != 0) {
      const Rational inv = 1 / x;
      for (auto& y : v) y *= inv;
      return;
    }
  }
}

void add_roots(EigenResult& out, const UPoly& charpoly) {
  RootAnalysis ra = analyze_roots(charpoly);
  for (const auto& [r, m] : ra.rational_roots) out.eigenvalues[r] += m;
  for (auto& fm : ra.irrational_factors) out.irrational_blocks.push_back(std::move(fm));
}

}  // namespace

FlagViolation::FlagViolation(FlagReport r) : std::runtime_error(flag_message(r)), report_(std::move(r)) {}

EigenResult exact_eigenvalues(const DiffOp& L, const CharacteristicVector& f, int n, bool want_eigenfunctions) {
  validate(f);
  if (L.dimension() != f.size()) throw DimensionMismatch(f.size(), L.dimension());
  const WeightedBasis B = enumerate_basis(f.size(), f, n);
  const OpMatrix M = matrix_of(L, B);
  if (!M.remainder_empty()) {
    FlagReport r = flag_preserved(L, f, n);
    throw FlagViolation(r);
  }
  EigenResult out;
  out.basis_size = B.size();
  for (int m = 0; m <= n; ++m) {
    const auto [begin, end] = B.level(m);
    if (begin == end) continue;
    // the induced map on P_m / P_{m-1}
    QMatrix block = M.dense_block(begin, end);
    for (const auto& comp : strongly_connected_blocks(block)) {
      if (comp.size() == 1) {
        out.eigenvalues[block[comp[0]][comp[0]]] += 1;
        continue;
      }
      add_roots(out, characteristic_polynomial(principal_submatrix(block, comp)));
    }
  }
  if (want_eigenfunctions) {
    const QMatrix A = dense(M);
    std::map<Rational, std::vector<Polynomial>> ef;
    for (const auto& [lambda, mult] : out.eigenvalues) {
      QMatrix shifted = A;
      for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i][i] -= lambda;
      std::vector<Polynomial> fs;
      for (auto& v : nullspace(shifted, B.size())) {
        normalize_first(v);
        fs.push_back(from_coords(B, v));
      }
      ef[lambda] = std::move(fs);
    }
    out.eigenfunctions = std::move(ef);
  }
  return out;
}

std::map<Rational, int> degeneracy_table(const DiffOp& L, const CharacteristicVector& f, int n) {
  return exact_eigenvalues(L, f, n, false).eigenvalues;
}

std::map<Rational, int> predicted_spectrum(const ModelDescriptor& model, int n) {
  std::map<Rational, int> out;
  const WeightedBasis B = enumerate_basis(model.d, model.f, n);
  for (const auto& p : B.monomials()) out[operator_eigenvalue(model, p)] += 1;
  return out;
}

QesBlock qes_block(const DiffOp& total, std::size_t radial, int k, const Rational& bracket_width) {
  if (k < 0) throw std::invalid_argument("qes block size must be non-negative");
  const std::size_t d = total.dimension();
  if (radial >= d) throw std::invalid_argument("radial variable out of range");
  auto vpow = [&](int j) { return Polynomial::variable(d, radial, j); };
  auto power_of = [&](const Exponents& e) -> int {
    for (std::size_t i = 0; i < d; ++i) {
      if (i != radial && e[i] != 0) return -1;
    }
    return e[radial];
  };
  QesBlock b;
  b.k = k;
  b.matrix = zero_matrix(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + 1));
  for (int j = 0; j <= k; ++j) {
    const Polynomial img = diffop_apply(total, vpow(j));
    for (const auto& [e, c] : img.terms()) {
      const int p = power_of(e);
      if (p < 0 || p > k) {
        throw std::domain_error("span of v^0..v^" + std::to_string(k) + " is not invariant: " +
                                monomial_string(vpow(j).terms().begin()->first) + " -> " + to_string(c) + "*" +
                                monomial_string(e));
      }
      b.matrix[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)] = c;
    }
  }
  b.charpoly = characteristic_polynomial(b.matrix);
  b.roots = analyze_roots(b.charpoly);
  std::vector<RootBracket> all;
  for (const auto& [r, m] : b.roots.rational_roots) all.push_back({r, r});
  for (const auto& [fac, m] : b.roots.irrational_factors) {
    for (const auto& br : isolate_real_roots(fac, bracket_width)) all.push_back(br);
  }
  std::sort(all.begin(), all.end(), [](const RootBracket& x, const RootBracket& y) { return x.lo < y.lo; });
  b.brackets = std::move(all);
  const Polynomial next = diffop_apply(total, vpow(k + 1));
  for (const auto& [e, c] : next.terms()) {
    const int p = power_of(e);
    if (p < 0 || p > k + 1) {
      b.escape = QesEscape{k + 1, p < 0 ? total_degree(e) : p, c};
      break;
    }
  }
  return b;
}

QesBlock qes_block(const ModelDescriptor& model, const QesParams& q, const Rational& bracket_width) {
  const DiffOp total = build(model) + build_qes_delta(model, q);
  return qes_block(total, model.radial_index, q.k, bracket_width);
}

CommutantResult commutant_search(const DiffOp& h, const CommutantAnsatz& ansatz) {
  const std::size_t d = h.dimension();
  std::set<std::pair<std::size_t, std::size_t>> zf;
  for (auto [i, j] : ansatz.zero_f) zf.insert({std::min(i, j), std::max(i, j)});
  const std::set<std::size_t> zg(ansatz.zero_g.begin(), ansatz.zero_g.end());
  const CharacteristicVector ones(d, 1);

  // one unknown per (derivative, monomial) slot; no zeroth-order terms
  std::vector<DiffOp> unknowns;
  auto add_slot = [&](const Exponents& deriv, int bound) {
    if (bound < 0) return;
    const WeightedBasis B = enumerate_basis(d, ones, bound);
    for (const auto& m : B.monomials()) unknowns.push_back(DiffOp::term(Polynomial::monomial(m), deriv));
  };
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      if (zf.count({i, j})) continue;
      Exponents e(d, 0);
      e[i] += 1;
      e[j] += 1;
      auto it = ansatz.f_bounds.find({i, j});
      add_slot(e, it == ansatz.f_bounds.end() ? ansatz.f_degree : it->second);
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (zg.count(i)) continue;
    Exponents e(d, 0);
    e[i] = 1;
    auto it = ansatz.g_bounds.find(i);
    add_slot(e, it == ansatz.g_bounds.end() ? ansatz.g_degree : it->second);
  }

  std::map<std::pair<Exponents, Exponents>, std::size_t> rows;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const DiffOp c = diffop_commutator(h, unknowns[u]);
    for (const auto& [deriv, poly] : c.terms()) {
      for (const auto& [mono, coef] : poly.terms()) {
        auto [it, fresh] = rows.try_emplace({deriv, mono}, rows.size());
        cols[u].emplace_back(it->second, coef);
      }
    }
  }
  QMatrix A = zero_matrix(rows.size(), unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    for (const auto& [r, v] : cols[u]) A[r][u] = v;
  }
  CommutantResult out;
  out.unknowns = unknowns.size();
  out.equations = rows.size();
  const auto kernel = nullspace(A, unknowns.size());
  out.rank = unknowns.size() - kernel.size();
  for (const auto& v : kernel) {
    DiffOp op(d);
    for (std::size_t u = 0; u < v.size(); ++u) {
      if (v[u] != 0) op += unknowns[u] * v[u];
    }
    out.basis.push_back(std::move(op));
  }
  return out;
}

nlohmann::json coefficients_json(const UPoly& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

nlohmann::json to_json(const RootBracket& b) {
  return {{"lo", to_string(b.lo)},
          {"hi", to_string(b.hi)},
          {"exact", b.lo == b.hi},
          {"approx", to_double((b.lo + b.hi) / 2)}};
}

nlohmann::json to_json(const EigenResult& r) {
  nlohmann::json j;
  j["basis_size"] = r.basis_size;
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& [v, m] : r.eigenvalues) {
    nlohmann::json e{{"value", to_string(v)}, {"multiplicity", m}};
    if (r.eigenfunctions) {
      nlohmann::json fs = nlohmann::json::array();
      for (const auto& p : r.eigenfunctions->at(v)) fs.push_back(to_string(p));
      e["eigenfunctions"] = fs;
    }
    ev.push_back(e);
  }
  j["eigenvalues"] = ev;
  nlohmann::json irr = nlohmann::json::array();
  for (const auto& [p, m] : r.irrational_blocks) {
    irr.push_back({{"coefficients", coefficients_json(p)}, {"multiplicity", m}});
  }
  j["irrational_blocks"] = irr;
  return j;
}

nlohmann::json to_json(const QesBlock& b) {
  nlohmann::json j;
  j["k"] = b.k;
  nlohmann::json m = nlohmann::json::array();
  for (const auto& row : b.matrix) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    m.push_back(r);
  }
  j["matrix"] = m;
  j["charpoly"] = coefficients_json(b.charpoly);
  j["charpoly_text"] = to_string(b.charpoly, "lambda");
  nlohmann::json rr = nlohmann::json::array();
  for (const auto& [r, mult] : b.roots.rational_roots) rr.push_back({{"value", to_string(r)}, {"multiplicity", mult}});
  j["rational_roots"] = rr;
  nlohmann::json irr = nlohmann::json::array();
  for (const auto& [p, mult] : b.roots.irrational_factors) {
    irr.push_back({{"coefficients", coefficients_json(p)}, {"multiplicity", mult}});
  }
  j["irrational_factors"] = irr;
  nlohmann::json br = nlohmann::json::array();
  for (const auto& x : b.brackets) br.push_back(to_json(x));
  j["root_brackets"] = br;
  if (b.escape) {
    j["escape"] = {{"degree", b.escape->degree},
                   {"image_degree", b.escape->image_degree},
                   {"coefficient", to_string(b.escape->coefficient)}};
  } else {
    j["escape"] = nullptr;
  }
  return j;
}

}  // namespace qes
