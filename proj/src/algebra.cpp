#include "qes/algebra.hpp"

#include <map>
#include <stdexcept>

namespace qes {

namespace {

Exponents unit(std::size_t d, std::size_t i) {
  Exponents e(d, 0);
  e[i] = 1;
  return e;
}

// Coordinates of operators in the (derivative, monomial) basis, one column per operator.
struct CoordinateSystem {
  std::map<std::pair<Exponents, Exponents>, std::size_t> rows;

  std::vector<std::pair<std::size_t, Rational>> add(const DiffOp& L) {
    std::vector<std::pair<std::size_t, Rational>> col;
    for (const auto& [deriv, poly] : L.terms()) {
      for (const auto& [mono, c] : poly.terms()) {
        auto [it, fresh] = rows.try_emplace({deriv, mono}, rows.size());
        col.emplace_back(it->second, c);
      }
    }
    return col;
  }
};

QMatrix assemble(std::size_t rows, const std::vector<std::vector<std::pair<std::size_t, Rational>>>& cols) {
  QMatrix A = zero_matrix(rows, cols.size());
  for (std::size_t u = 0; u < cols.size(); ++u) {
    for (const auto& [r, v] : cols[u]) A[r][u] = v;
  }
  return A;
}

// Best-effort solve: the consistent part of A x = b, free variables zero.
QVector partial_solution(const QMatrix& A, const QVector& b, std::size_t cols, bool& consistent) {
  QMatrix aug = A;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const RowEchelon e = reduced_row_echelon(aug);
  QVector x(cols, 0);
  consistent = true;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == cols) {
      consistent = false;
      continue;
    }
    x[e.pivots[r]] = e.rref[r][cols];
  }
  return x;
}

std::vector<DiffOp> unknown_ops(const GeneratorSet& G, std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<DiffOp> ops;
  const std::size_t m = G.members.size();
  pairs.clear();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      pairs.emplace_back(a, b);
      ops.push_back(G.members[a].op * G.members[b].op);
    }
  }
  for (const auto& g : G.members) ops.push_back(g.op);
  ops.push_back(DiffOp::identity(G.d));
  return ops;
}

}  // namespace

const Generator& GeneratorSet::at(const std::string& n) const {
  for (const auto& g : members) {
    if (g.name == n) return g;
  }
  throw std::invalid_argument("no generator named " + n + " in " + name);
}

GeneratorSet GeneratorSet::non_raising() const {
  GeneratorSet out{name + " (non-raising)", d, mark, {}};
  for (const auto& g : members) {
    if (!g.raising) out.members.push_back(g);
  }
  return out;
}

GeneratorSet GeneratorSet::subset(const std::vector<std::string>& names) const {
  GeneratorSet out{name, d, mark, {}};
  for (const auto& n : names) out.members.push_back(at(n));
  return out;
}

GeneratorSet gl_generators(std::size_t d, const Rational& n) {
  if (d < 1) throw std::invalid_argument("gl generators need d >= 1");
  GeneratorSet G{"gl(" + std::to_string(d + 1) + ")", d, n, {}};
  auto idx = [](std::size_t i) { return std::to_string(i + 1); };
  DiffOp euler(d);
  for (std::size_t i = 0; i < d; ++i) euler.add_term(unit(d, i), Polynomial::variable(d, i));
  const DiffOp J0 = euler - DiffOp::identity(d, n);
  for (std::size_t i = 0; i < d; ++i) G.members.push_back({"J-_" + idx(i), DiffOp::partial(d, i), false});
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      G.members.push_back({"J0_" + idx(i) + idx(j), DiffOp::term(Polynomial::variable(d, i), unit(d, j)), false});
    }
  }
  G.members.push_back({"J0", J0, false});
  for (std::size_t i = 0; i < d; ++i) {
    G.members.push_back({"J+_" + idx(i), DiffOp::multiplication(Polynomial::variable(d, i)) * J0, true});
  }
  return G;
}

namespace {

DiffOp g2_J4(const Rational& n) {
  return parse_diffop("(t1^2) d1 + (2*t1*t2) d2", 2) - DiffOp::multiplication(Polynomial::variable(2, 0)) * n;
}

DiffOp g2_J0(const Rational& n) { return parse_diffop("(t1) d1 + (2*t2) d2", 2) - DiffOp::identity(2, n); }

}  // namespace

DiffOp g2_iterated_commutator(const Rational& n, int i) {
  const DiffOp J4 = g2_J4(n);
  DiffOp T = parse_diffop("(t2) d1^2", 2);
  for (int k = 0; k < i; ++k) T = diffop_commutator(J4, T);
  return T;
}

DiffOp g2_t_closed_form(const Rational& n, int i) {
  if (i < 0 || i > 2) throw std::invalid_argument("closed form defined for i = 0, 1, 2");
  const DiffOp J0 = g2_J0(n);
  DiffOp op = DiffOp::term(Polynomial::variable(2, 1), {2 - i, 0});
  for (int k = 0; k < i; ++k) op = op * (J0 + DiffOp::identity(2, k));
  return op;
}

GeneratorSet g2_generators(const Rational& n) {
  GeneratorSet G{"g2", 2, n, {}};
  const Rational third = n / 3;
  G.members.push_back({"J1", parse_diffop("(1) d1", 2), false});
  G.members.push_back({"J2", parse_diffop("(t1) d1", 2) - DiffOp::identity(2, third), false});
  G.members.push_back({"J3", parse_diffop("(2*t2) d2", 2) - DiffOp::identity(2, third), false});
  G.members.push_back({"J4", g2_J4(n), true});
  G.members.push_back({"R0", parse_diffop("(1) d2", 2), false});
  G.members.push_back({"R1", parse_diffop("(t1) d2", 2), false});
  G.members.push_back({"R2", parse_diffop("(t1^2) d2", 2), false});
  G.members.push_back({"J0", g2_J0(n), false});
  for (int i = 0; i <= 2; ++i) G.members.push_back({"T" + std::to_string(i), g2_iterated_commutator(n, i), false});
  return G;
}

InvarianceReport check_invariance(const GeneratorSet& G, const CharacteristicVector& f, int n) {
  if (!is_integer(G.mark) || G.mark != n) {
    throw std::invalid_argument("generator mark " + to_string(G.mark) + " differs from flag degree " +
                                std::to_string(n));
  }
  InvarianceReport r;
  r.n = n;
  r.f = f;
  // only P_n itself must be invariant; raising generators move lower levels up
  const WeightedBasis B = enumerate_basis(G.d, f, n);
  for (const auto& g : G.members) {
    const OpMatrix M = matrix_of(g.op, B);
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (M.remainder[j].is_zero()) continue;
      FlagWitness w;
      w.monomial = B.at(j);
      w.monomial_degree = B.degree_at(j);
      w.image_degree = -1;
      for (const auto& [e, c] : M.remainder[j].terms()) {
        const int deg = weighted_degree(e, f);
        if (deg > w.image_degree) {
          w.image_degree = deg;
          w.image_monomial = e;
          w.image_coefficient = c;
        }
      }
      r.invariant = false;
      r.escapes.emplace_back(g.name, w);
      break;
    }
  }
  return r;
}

SpanMembership span_membership(const DiffOp& L, const std::vector<DiffOp>& basis) {
  CoordinateSystem cs;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols;
  for (const auto& b : basis) cols.push_back(cs.add(b));
  const auto target = cs.add(L);
  QMatrix A = assemble(cs.rows.size(), cols);
  QVector rhs(cs.rows.size(), 0);
  for (const auto& [r, v] : target) rhs[r] = v;
  SpanMembership s;
  s.coefficients = partial_solution(A, rhs, basis.size(), s.in_span);
  return s;
}

CommutationTable commutation_table(const GeneratorSet& G) {
  CommutationTable t;
  std::vector<DiffOp> basis;
  for (const auto& g : G.members) basis.push_back(g.op);
  for (std::size_t a = 0; a < G.members.size(); ++a) {
    for (std::size_t b = a + 1; b < G.members.size(); ++b) {
      CommutatorEntry e{a, b, diffop_commutator(G.members[a].op, G.members[b].op), {}};
      e.span = span_membership(e.value, basis);
      t.closed = t.closed && e.span.in_span;
      t.entries.push_back(std::move(e));
    }
  }
  return t;
}

DecompositionResult decompose_pol2(const DiffOp& L, const GeneratorSet& G) {
  DecompositionResult r;
  const std::vector<DiffOp> ops = unknown_ops(G, r.pairs);
  CoordinateSystem cs;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols;
  for (const auto& op : ops) cols.push_back(cs.add(op));
  const auto target = cs.add(L);
  const QMatrix A = assemble(cs.rows.size(), cols);
  QVector rhs(cs.rows.size(), 0);
  for (const auto& [row, v] : target) rhs[row] = v;

  bool consistent = false;
  const QVector x = partial_solution(A, rhs, ops.size(), consistent);
  r.unknowns = ops.size();
  r.kernel = nullspace(A, ops.size());
  r.nullity = r.kernel.size();
  r.rank = ops.size() - r.nullity;
  const std::size_t np = r.pairs.size(), m = G.members.size();
  r.pair_coefficients.assign(x.begin(), x.begin() + static_cast<long>(np));
  r.single_coefficients.assign(x.begin() + static_cast<long>(np), x.begin() + static_cast<long>(np + m));
  r.constant = x[np + m];
  r.residual = L - reconstruct(r, G);
  return r;
}

DiffOp reconstruct(const DecompositionResult& r, const GeneratorSet& G) {
  DiffOp out(G.d);
  for (std::size_t k = 0; k < r.pairs.size(); ++k) {
    if (r.pair_coefficients[k] == 0) continue;
    const auto [a, b] = r.pairs[k];
    out += (G.members[a].op * G.members[b].op) * r.pair_coefficients[k];
  }
  for (std::size_t a = 0; a < G.members.size(); ++a) {
    if (r.single_coefficients[a] != 0) out += G.members[a].op * r.single_coefficients[a];
  }
  if (r.constant != 0) out += DiffOp::identity(G.d, r.constant);
  return out;
}

bool in_solution_space(const DecompositionResult& r, const GeneratorSet& G, const QVector& v) {
  if (!r.exact()) return false;
  DecompositionResult probe = r;
  const std::size_t np = r.pairs.size(), m = G.members.size();
  if (v.size() != np + m + 1) throw std::invalid_argument("coefficient vector has the wrong length");
  probe.pair_coefficients.assign(v.begin(), v.begin() + static_cast<long>(np));
  probe.single_coefficients.assign(v.begin() + static_cast<long>(np), v.begin() + static_cast<long>(np + m));
  probe.constant = v[np + m];
  return reconstruct(probe, G) == reconstruct(r, G);
}

nlohmann::json to_json(const InvarianceReport& r) {
  nlohmann::json j{{"invariant", r.invariant}, {"n", r.n}, {"f", r.f}};
  nlohmann::json esc = nlohmann::json::array();
  for (const auto& [name, w] : r.escapes) {
    esc.push_back({{"generator", name},
                   {"monomial", monomial_string(w.monomial)},
                   {"image_term", to_string(w.image_coefficient) + "*" + monomial_string(w.image_monomial)},
                   {"image_degree", w.image_degree}});
  }
  j["escapes"] = esc;
  return j;
}

nlohmann::json to_json(const CommutationTable& t, const GeneratorSet& G) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : t.entries) {
    nlohmann::json span = nlohmann::json::object();
    for (std::size_t k = 0; k < e.span.coefficients.size(); ++k) {
      if (e.span.coefficients[k] != 0) span[G.members[k].name] = to_string(e.span.coefficients[k]);
    }
    rows.push_back({{"a", G.members[e.a].name},
                    {"b", G.members[e.b].name},
                    {"commutator", to_string(e.value)},
                    {"in_span", e.span.in_span},
                    {"span_coefficients", span}});
  }
  return {{"set", G.name}, {"closed", t.closed}, {"entries", rows}};
}

nlohmann::json to_json(const DecompositionResult& r, const GeneratorSet& G) {
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t k = 0; k < r.pairs.size(); ++k) {
    if (r.pair_coefficients[k] == 0) continue;
    pairs.push_back({{"a", G.members[r.pairs[k].first].name},
                     {"b", G.members[r.pairs[k].second].name},
                     {"coefficient", to_string(r.pair_coefficients[k])}});
  }
  nlohmann::json singles = nlohmann::json::object();
  for (std::size_t a = 0; a < G.members.size(); ++a) {
    if (r.single_coefficients[a] != 0) singles[G.members[a].name] = to_string(r.single_coefficients[a]);
  }
  return {{"set", G.name},
          {"generators", [&] {
             nlohmann::json n = nlohmann::json::array();
             for (const auto& g : G.members) n.push_back(g.name);
             return n;
           }()},
          {"pairs", pairs},
          {"singles", singles},
          {"constant", to_string(r.constant)},
          {"unknowns", r.unknowns},
          {"rank", r.rank},
          {"solution_dimension", r.nullity},
          {"residual", to_string(r.residual)},
          {"exact", r.exact()}};
}

}  // namespace qes
