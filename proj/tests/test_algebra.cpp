#include <doctest.h>

#include <random>

#include "qes/algebra.hpp"
#include "qes/models.hpp"

using namespace qes;

TEST_CASE("gl(d+1) generators") {
  for (std::size_t d = 1; d <= 4; ++d) CHECK(gl_generators(d, 2).members.size() == (d + 1) * (d + 1));
  auto G = gl_generators(2, 3);
  // [J-_i, J+_j] = delta_ij J0 + t_j d_i
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      DiffOp expect = DiffOp::term(Polynomial::variable(2, j), i == 0 ? Exponents{1, 0} : Exponents{0, 1});
      if (i == j) expect += G.at("J0").op;
      CHECK(diffop_commutator(G.members[i].op, G.at("J+_" + std::to_string(j + 1)).op) == expect);
    }
  }
  CHECK(diffop_apply(G.at("J+_1").op, parse_polynomial("t1^3", 2)).is_zero());
  CHECK(G.at("J+_2").raising);
  CHECK_FALSE(G.at("J0_12").raising);
  // [J0_ij, J0_kl] = delta_jk J0_il - delta_li J0_kj
  auto name = [](int a, int b) { return "J0_" + std::to_string(a) + std::to_string(b); };
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k)
        for (int l = 1; l <= 2; ++l) {
          DiffOp expect(2);
          if (j == k) expect += G.at(name(i, l)).op;
          if (l == i) expect -= G.at(name(k, j)).op;
          CHECK(diffop_commutator(G.at(name(i, j)).op, G.at(name(k, l)).op) == expect);
        }
}

TEST_CASE("gl invariance of P_n") {
  for (std::size_t d = 1; d <= 4; ++d) {
    for (int n = 0; n <= (d >= 4 ? 5 : 8); ++n) {
      auto G = gl_generators(d, n);
      CharacteristicVector ones(d, 1);
      CHECK(check_invariance(G, ones, n).invariant);
      // with mark n the raising generators leave P_{n+1}
      CHECK_FALSE(flag_preserved(G.at("J+_1").op, ones, n + 1).preserved);
      CHECK_THROWS_AS(check_invariance(G, ones, n + 1), std::invalid_argument);
    }
  }
  auto G = gl_generators(2, 3);
  G.mark = 4;
  auto esc = check_invariance(G, {1, 1}, 4);
  CHECK_FALSE(esc.invariant);
  REQUIRE(esc.escapes.size() == 2);
  CHECK(esc.escapes[0].first == "J+_1");
  CHECK(esc.escapes[0].second.image_degree == 5);
}

TEST_CASE("g2 generators") {
  const Rational n = 4;
  auto G = g2_generators(n);
  CHECK(G.members.size() == 11);
  CHECK(g2_iterated_commutator(n, 3).is_zero());
  // closed forms hold up to the scalars 1, -2, 2
  CHECK(g2_iterated_commutator(n, 0) == g2_t_closed_form(n, 0));
  CHECK(g2_iterated_commutator(n, 1) == g2_t_closed_form(n, 1) * Rational(-2));
  CHECK(g2_iterated_commutator(n, 2) == g2_t_closed_form(n, 2) * Rational(2));
  for (int i = 0; i <= 2; ++i) {
    CHECK(G.at("T" + std::to_string(i)).op.order() <= 2);
    for (int j = 0; j <= 2; ++j) {
      CHECK(diffop_commutator(G.at("T" + std::to_string(i)).op, G.at("T" + std::to_string(j)).op).is_zero());
    }
  }
  CHECK(check_invariance(G, {1, 2}, 4).invariant);
  for (int m = 0; m <= 6; ++m) CHECK(check_invariance(g2_generators(m), {1, 2}, m).invariant);
  for (const char* a : {"R0", "R1", "R2"})
    for (const char* b : {"R0", "R1", "R2"}) CHECK(diffop_commutator(G.at(a).op, G.at(b).op).is_zero());
}

TEST_CASE("commutation tables close") {
  CHECK(commutation_table(gl_generators(2, Rational(1, 2))).closed);
  CHECK(commutation_table(gl_generators(3, 2)).closed);
  auto first = g2_generators(3).subset({"J1", "J2", "J3", "J4", "R0", "R1", "R2", "J0"});
  CHECK(commutation_table(first).closed);
  // adding T0 alone does not close
  CHECK_FALSE(commutation_table(g2_generators(3).subset({"J1", "J2", "J3", "J4", "T0"})).closed);
}

TEST_CASE("decomposition of the Laguerre operator") {
  const Rational omega(3, 2), c(5, 2);
  DiffOp L = parse_diffop("(-2*t1) d1^2", 1) + DiffOp::term(parse_polynomial("3*t1 - 5/2", 1), {1});
  auto G = gl_generators(1, 0).non_raising();
  auto r = decompose_pol2(L, G);
  CHECK(r.exact());
  CHECK(reconstruct(r, G) == L);
  // -2 J0_11 J-_1 + 2 omega J0_11 - c J-_1; members are J-_1, J0_11, J0
  QVector v(G.members.size() * G.members.size() + G.members.size() + 1, 0);
  v[1 * 3 + 0] = -2;
  v[9 + 1] = 2 * omega;
  v[9 + 0] = -c;
  CHECK(in_solution_space(r, G, v));
  CHECK(r.nullity > 0);
}

TEST_CASE("Calogero and BC decompose over non-raising gl generators") {
  for (auto set : {CoefficientSet::printed, CoefficientSet::cartesian}) {
    ModelParams p;
    p.n_bodies = 3;
    p.omega = Rational(7, 3);
    p.nu = Rational(1, 4);
    p.nu2 = Rational(2, 3);
    p.coefficients = set;
    for (const char* name : {"calogero", "bcn"}) {
      auto m = describe(name, p);
      auto G = gl_generators(m.d, 0).non_raising();
      auto r = decompose_pol2(build(m), G);
      CAPTURE(name);
      CHECK(r.exact());
    }
  }
  // an operator that raises degree is not in Pol2 of the non-raising set
  auto G = gl_generators(1, 0).non_raising();
  auto r = decompose_pol2(parse_diffop("(t1^3) d1", 1), G);
  CHECK_FALSE(r.exact());
  CHECK(r.residual == parse_diffop("(t1^3) d1", 1));
}

TEST_CASE("G2 printed combination") {
  ModelParams p;
  p.omega = Rational(5, 4);
  p.nu = Rational(1, 3);
  p.mu = Rational(2, 7);
  const DiffOp h = build(describe("g2", p));
  auto G = g2_generators(0).subset({"J1", "J2", "J3", "R2"});
  auto J = [&](const char* s) { return G.at(s).op; };
  DiffOp printed = (J("J2") + J("J3") * Rational(3)) * J("J1") - (J("J3") * J("R2")) * Rational(2, 3) +
                   J("J1") * (2 * (3 * (p.mu + p.nu) + 1)) + J("J2") * (2 * p.omega) + J("J3") * (3 * p.omega) -
                   J("R2") * (Rational(4, 3) * (1 + 2 * p.mu));
  CHECK(printed == h);
  auto r = decompose_pol2(h, G);
  CHECK(r.exact());
  QVector v(16 + 4 + 1, 0);
  v[1 * 4 + 0] = 1;
  v[2 * 4 + 0] = 3;
  v[2 * 4 + 3] = Rational(-2, 3);
  v[16 + 0] = 2 * (3 * (p.mu + p.nu) + 1);
  v[16 + 1] = 2 * p.omega;
  v[16 + 2] = 3 * p.omega;
  v[16 + 3] = -Rational(4, 3) * (1 + 2 * p.mu);
  CHECK(in_solution_space(r, G, v));
}

TEST_CASE("round trip of random Pol2 elements") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  for (auto G : {gl_generators(2, Rational(1, 3)).non_raising(), g2_generators(2).non_raising()}) {
    for (int trial = 0; trial < 3; ++trial) {
      DecompositionResult seed;
      const std::size_t m = G.members.size();
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) seed.pairs.emplace_back(a, b);
      auto draw = [&] {
        Rational x(num(rng), den(rng));
        x.canonicalize();
        return x;
      };
      for (std::size_t k = 0; k < seed.pairs.size(); ++k) seed.pair_coefficients.push_back(draw());
      for (std::size_t a = 0; a < m; ++a) seed.single_coefficients.push_back(draw());
      seed.constant = draw();
      const DiffOp L = reconstruct(seed, G);
      auto r = decompose_pol2(L, G);
      CHECK(r.exact());
      CHECK(reconstruct(r, G) == L);
    }
  }
}
