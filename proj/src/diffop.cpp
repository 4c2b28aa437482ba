#include "qes/diffop.hpp"

#include <cctype>
#include <stdexcept>

namespace qes {

namespace {

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Calls fn(gamma) for every multi-index gamma <= alpha componentwise.
template <class Fn>
void for_each_below(const Exponents& alpha, Fn&& fn) {
  Exponents g(alpha.size(), 0);
  while (true) {
    fn(g);
    std::size_t i = 0;
    for (; i < g.size(); ++i) {
      if (g[i] < alpha[i]) {
        ++g[i];
        break;
      }
      g[i] = 0;
    }
    if (i == g.size()) return;
  }
}

}  // namespace

DiffOp DiffOp::multiplication(const Polynomial& p) {
  DiffOp L(p.dimension());
  L.add_term(Exponents(p.dimension(), 0), p);
  return L;
}

DiffOp DiffOp::identity(std::size_t dimension, const Rational& c) {
  return multiplication(Polynomial::constant(dimension, c));
}

DiffOp DiffOp::derivative(const Exponents& orders) {
  DiffOp L(orders.size());
  L.add_term(orders, Polynomial::constant(orders.size(), 1));
  return L;
}

DiffOp DiffOp::partial(std::size_t dimension, std::size_t i, int order) {
  if (i >= dimension) throw DimensionMismatch(dimension, i + 1);
  Exponents e(dimension, 0);
  e[i] = order;
  return derivative(e);
}

DiffOp DiffOp::term(const Polynomial& coefficient, const Exponents& orders) {
  DiffOp L(orders.size());
  L.add_term(orders, coefficient);
  return L;
}

int DiffOp::order() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

Polynomial DiffOp::coefficient(const Exponents& orders) const {
  auto it = terms_.find(orders);
  return it == terms_.end() ? Polynomial(dim_) : it->second;
}

void DiffOp::add_term(const Exponents& orders, const Polynomial& coefficient) {
  if (orders.size() != dim_) throw DimensionMismatch(dim_, orders.size());
  if (coefficient.dimension() != dim_) throw DimensionMismatch(dim_, coefficient.dimension());
  if (coefficient.is_zero()) return;
  for (int o : orders) {
    if (o < 0) throw std::invalid_argument("negative derivative order");
  }
  auto [it, inserted] = terms_.try_emplace(orders, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& other) {
  if (other.dim_ != dim_) throw DimensionMismatch(dim_, other.dim_);
  for (const auto& [a, c] : other.terms_) add_term(a, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& other) {
  if (other.dim_ != dim_) throw DimensionMismatch(dim_, other.dim_);
  for (const auto& [a, c] : other.terms_) add_term(a, -c);
  return *this;
}

DiffOp& DiffOp::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, p] : terms_) p *= c;
  return *this;
}

// (a d^alpha)(b d^beta) = a sum_{gamma<=alpha} prod C(alpha_i,gamma_i) (d^gamma b) d^{alpha-gamma+beta}
DiffOp operator*(const DiffOp& L, const DiffOp& M) {
  if (L.dim_ != M.dim_) throw DimensionMismatch(L.dim_, M.dim_);
  const std::size_t d = L.dim_;
  DiffOp out(d);
  Exponents idx(d);
  for (const auto& [alpha, a] : L.terms_) {
    for (const auto& [beta, b] : M.terms_) {
      for_each_below(alpha, [&](const Exponents& gamma) {
        Polynomial db = b.derivative(gamma);
        if (db.is_zero()) return;
        Integer mult = 1;
        for (std::size_t i = 0; i < d; ++i) {
          mult *= binomial(alpha[i], gamma[i]);
          idx[i] = alpha[i] - gamma[i] + beta[i];
        }
        out.add_term(idx, (a * db) * Rational(mult));
      });
    }
  }
  return out;
}

Polynomial diffop_apply(const DiffOp& L, const Polynomial& p) {
  if (L.dimension() != p.dimension()) throw DimensionMismatch(L.dimension(), p.dimension());
  Polynomial out(p.dimension());
  for (const auto& [alpha, c] : L.terms()) {
    Polynomial dp = p.derivative(alpha);
    if (!dp.is_zero()) out += c * dp;
  }
  return out;
}

DiffOp diffop_compose(const DiffOp& L, const DiffOp& M) { return L * M; }

DiffOp diffop_commutator(const DiffOp& L, const DiffOp& M) { return L * M - M * L; }

bool diffop_equal(const DiffOp& L, const DiffOp& M) { return L == M; }

bool raw_equal(const RawOp& a, const RawOp& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].scale != b[i].scale || a[i].factors != b[i].factors) return false;
  }
  return true;
}

DiffOp canonicalize(const RawOp& raw, std::size_t dimension) {
  DiffOp out(dimension);
  for (const auto& term : raw) {
    DiffOp word = DiffOp::identity(dimension, term.scale);
    for (const auto& f : term.factors) {
      if (const auto* p = std::get_if<Polynomial>(&f)) {
        word = word * DiffOp::multiplication(*p);
      } else {
        word = word * DiffOp::derivative(std::get<Exponents>(f));
      }
    }
    out += word;
  }
  return out;
}

std::string to_string(const DiffOp& L) {
  if (L.is_zero()) return "0";
  std::string out;
  // highest order first
  for (auto it = L.terms().rbegin(); it != L.terms().rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += '(' + to_string(it->second) + ')';
    const Exponents& a = it->first;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      out += " d" + std::to_string(i + 1);
      if (a[i] > 1) out += '^' + std::to_string(a[i]);
    }
  }
  return out;
}

DiffOp parse_diffop(std::string_view s, std::size_t dimension) {
  DiffOp out(dimension);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("operator parse error at " + std::to_string(pos) + ": " + why);
  };
  auto skip = [&] {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  };
  auto number = [&] {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::stoi(std::string(s.substr(start, pos - start)));
  };
  skip();
  if (s.substr(pos) == "0") return out;
  bool first = true;
  while (true) {
    skip();
    if (pos == s.size()) break;
    if (!first) {
      if (s[pos] != '+') fail("expected '+'");
      ++pos;
      skip();
    }
    first = false;
    if (pos >= s.size() || s[pos] != '(') fail("expected '('");
    int depth = 0;
    const std::size_t open = pos;
    for (; pos < s.size(); ++pos) {
      if (s[pos] == '(') ++depth;
      if (s[pos] == ')' && --depth == 0) break;
    }
    if (pos == s.size()) fail("unbalanced parenthesis");
    Polynomial c = parse_polynomial(s.substr(open + 1, pos - open - 1), dimension);
    ++pos;
    Exponents a(dimension, 0);
    while (true) {
      skip();
      if (pos >= s.size() || s[pos] != 'd') break;
      ++pos;
      const int idx = number();
      if (idx < 1 || static_cast<std::size_t>(idx) > dimension) fail("derivative index out of range");
      int power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        power = number();
      }
      a[static_cast<std::size_t>(idx - 1)] += power;
    }
    out.add_term(a, c);
  }
  return out;
}

}  // namespace qes
