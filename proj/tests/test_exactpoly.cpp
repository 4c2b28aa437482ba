#include <doctest.h>

#include <random>

#include "qes/diffop.hpp"

using namespace qes;

namespace {

Polynomial P(const char* s, std::size_t d) { return parse_polynomial(s, d); }
DiffOp D(const char* s, std::size_t d) { return parse_diffop(s, d); }

Polynomial random_poly(std::mt19937_64& rng, std::size_t d, int max_deg, int terms) {
  std::uniform_int_distribution<int> e(0, max_deg), c(-5, 5), den(1, 4);
  Polynomial p(d);
  for (int k = 0; k < terms; ++k) {
    Exponents x(d);
    for (auto& v : x) v = e(rng);
    p.add_term(x, Rational(c(rng), den(rng)));
  }
  return p;
}

DiffOp random_op(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> o(0, 2);
  DiffOp L(d);
  for (int k = 0; k < 3; ++k) {
    Exponents a(d);
    for (auto& v : a) v = o(rng);
    L.add_term(a, random_poly(rng, d, 2, 2));
  }
  return L;
}

}  // namespace

TEST_CASE("rational parse and print") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-128/45")) == "-128/45");
  CHECK(to_string(parse_rational("7")) == "7");
  for (const char* s : {"1/2", "-3/7", "0", "12345678901234567890/7"}) CHECK(to_string(parse_rational(s)) == s);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
}

TEST_CASE("poly_mul examples") {
  CHECK(poly_mul(P("t1 + 1", 1), P("t1 - 1", 1)) == P("t1^2 - 1", 1));
  CHECK(poly_mul(P("3/10*t1", 2), P("2/3*t2", 2)) == P("1/5*t1*t2", 2));
  Polynomial m = poly_mul(P("t1^2", 3), P("t2", 3));
  REQUIRE(m.size() == 1);
  CHECK(m.terms().begin()->first == Exponents{2, 1, 0});
  CHECK_THROWS_AS(poly_mul(P("t1", 1), P("t1", 2)), DimensionMismatch);
}

TEST_CASE("polynomial text round trip") {
  for (const char* s : {"3/10*t1^2*t2 - t3", "-t1 + 1", "0", "-128/45*t2^3 + 20*t3"}) {
    CHECK(to_string(P(s, 3)) == s);
  }
  CHECK_THROWS(P("t4", 3));
  CHECK_THROWS(P("t1 t2", 3));
}

TEST_CASE("poly_mul is commutative and associative") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_poly(rng, 3, 3, 4), b = random_poly(rng, 3, 3, 4), c = random_poly(rng, 3, 3, 4);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).size() <= a.size() * b.size());
  }
}

TEST_CASE("diffop_apply examples") {
  DiffOp euler = D("(t1) d1", 1);
  for (int k = 0; k < 6; ++k) {
    Polynomial tk = Polynomial::variable(1, 0, k);
    CHECK(diffop_apply(euler, tk) == Rational(k) * tk);
  }
  CHECK(diffop_apply(D("(t1) d1^2 + (t2) d2", 2), Polynomial::constant(2, 1)).is_zero());
}

TEST_CASE("diffop_compose examples") {
  CHECK(diffop_compose(D("(t1) d1", 1), D("(1) d1", 1)) == D("(t1) d1^2", 1));
  CHECK(diffop_compose(D("(1) d1", 1), D("(t1) d1", 1)) == D("(t1) d1^2 + (1) d1", 1));
  CHECK_THROWS_AS(diffop_compose(D("(1) d1", 1), D("(1) d1", 2)), DimensionMismatch);
}

TEST_CASE("diffop_commutator examples") {
  CHECK(diffop_commutator(D("(1) d1", 1), D("(t1) d1", 1)) == D("(1) d1", 1));
  DiffOp L = D("(t1*t2) d1^2 + (3) d2", 2);
  CHECK(diffop_commutator(L, L).is_zero());
}

TEST_CASE("diffop_equal and raw normal ordering") {
  CHECK(diffop_equal(D("(t1) d1^2", 1), D("(t1) d1^2", 1)));
  Polynomial t = Polynomial::variable(1, 0);
  Exponents d{1};
  RawOp dt{{1, {d, t}}};   // d∘t
  RawOp td{{1, {t, d}}};   // t∘d
  RawOp td_plus_one{{1, {t, d}}, {1, {Polynomial::constant(1, 1)}}};
  CHECK_FALSE(raw_equal(td, dt));
  CHECK(diffop_equal(canonicalize(dt, 1), canonicalize(td_plus_one, 1)));
  CHECK_FALSE(diffop_equal(canonicalize(dt, 1), canonicalize(td, 1)));
  // idempotent
  DiffOp once = canonicalize(dt, 1);
  RawOp again;
  for (const auto& [a, c] : once.terms()) again.push_back({1, {c, a}});
  CHECK(canonicalize(again, 1) == once);
}

TEST_CASE("composition agrees with sequential application") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto L = random_op(rng, 2), M = random_op(rng, 2);
    auto p = random_poly(rng, 2, 4, 5);
    CHECK(diffop_apply(L * M, p) == diffop_apply(L, diffop_apply(M, p)));
  }
}

TEST_CASE("Jacobi identity and antisymmetry") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto L = random_op(rng, 2), M = random_op(rng, 2), K = random_op(rng, 2);
    auto lm = diffop_commutator(L, M);
    CHECK(lm == -diffop_commutator(M, L));
    DiffOp j = diffop_commutator(lm, K) + diffop_commutator(diffop_commutator(M, K), L) +
               diffop_commutator(diffop_commutator(K, L), M);
    CHECK(j.is_zero());
  }
}

TEST_CASE("operator text round trip") {
  DiffOp L = D("(-4/3*t1^2*t2) d2^2 + (6*t2) d1 d2 + (2*t1 + 8) d1", 2);
  CHECK(parse_diffop(to_string(L), 2) == L);
  CHECK(to_string(DiffOp(2)) == "0");
}
