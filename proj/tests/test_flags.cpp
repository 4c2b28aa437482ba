#include <doctest.h>

#include "qes/flags.hpp"

using namespace qes;

TEST_CASE("enumerate_basis counts") {
  CHECK(enumerate_basis(2, {1, 1}, 2).size() == 6);
  CHECK(enumerate_basis(2, {1, 2}, 4).size() == 9);
  CHECK(enumerate_basis(4, {1, 5, 8, 12}, 12).size() == 30);
  CHECK(enumerate_basis(3, {1, 2, 3}, 6).size() == 23);
  CHECK(basis_dimension(3, {1, 2, 3}, 6) == 23);
  CHECK(basis_dimension(2, {1, 1}, 2) == 6);
  for (std::size_t d = 1; d <= 4; ++d) CHECK(basis_dimension(d, CharacteristicVector(d, 3), 0) == 1);
}

TEST_CASE("dimension law for unit weights") {
  for (std::size_t d = 1; d <= 6; ++d) {
    for (int n = 0; n <= 12; ++n) {
      Integer b;
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n) + d, d);
      CHECK(basis_dimension(d, CharacteristicVector(d, 1), n) == b);
    }
  }
}

TEST_CASE("basis ordering and lookup") {
  auto B = enumerate_basis(3, {1, 2, 3}, 7);
  CHECK(B.size() == static_cast<std::size_t>(basis_dimension(3, {1, 2, 3}, 7).get_si()));
  for (std::size_t i = 0; i < B.size(); ++i) {
    CHECK(B.index_of(B.at(i)) == i);
    if (i > 0) {
      CHECK(B.degree_at(i - 1) <= B.degree_at(i));
      if (B.degree_at(i - 1) == B.degree_at(i)) {
        // reversed-lex tie break: (3,0,0) before (1,1,0) before (0,0,1)
        const auto& a = B.at(i - 1);
        const auto& b = B.at(i);
        CHECK(std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend()));
      }
    }
  }
  auto [lo, hi] = B.level(3);
  REQUIRE(hi - lo == 3);
  CHECK(B.at(lo) == Exponents{3, 0, 0});
  CHECK(B.at(lo + 1) == Exponents{1, 1, 0});
  CHECK(B.at(lo + 2) == Exponents{0, 0, 1});
}

TEST_CASE("weighted_degree") {
  CHECK(weighted_degree({0, 0, 0}, {1, 2, 3}) == 0);
  CHECK(weighted_degree({1, 1, 0}, {1, 2, 3}) == 3);
  CHECK(weighted_degree({0, 0, 0, 1}, {1, 5, 8, 12}) == 12);
  CHECK_THROWS_AS(weighted_degree({1, 1}, {1, 2, 3}), DimensionMismatch);
}

TEST_CASE("matrix_of Laguerre operator") {
  // L = -2t d^2 + (2t - 3) d with omega = 1, c = 3
  DiffOp L = parse_diffop("(-2*t1) d1^2 + (2*t1 - 3) d1", 1);
  auto M = matrix_of(L, enumerate_basis(1, {1}, 2));
  CHECK(M.remainder_empty());
  CHECK(M.columns[0].empty());
  CHECK(M.entry(0, 1) == -3);
  CHECK(M.entry(1, 1) == 2);
  CHECK(M.entry(1, 2) == -4 - 6);
  CHECK(M.entry(2, 2) == 4);
  CHECK(M.entry(2, 1) == 0);
}

TEST_CASE("raising operator leaves a remainder") {
  DiffOp L = parse_diffop("(t1^2) d1", 1);
  auto M = matrix_of(L, enumerate_basis(1, {1}, 1));
  CHECK_FALSE(M.remainder_empty());
  CHECK(M.remainder[1] == parse_polynomial("t1^2", 1));
  auto r = flag_preserved(L, {1}, 3);
  CHECK_FALSE(r.preserved);
  REQUIRE(r.witness);
  CHECK(r.witness->monomial == Exponents{1});
  CHECK(r.witness->image_monomial == Exponents{2});
  CHECK(to_json(r)["witness"]["image_term"] == "1*t1^2");
}

TEST_CASE("euler operator preserves every flag") {
  DiffOp E = parse_diffop("(t1) d1 + (t2) d2", 2);
  for (auto f : {CharacteristicVector{1, 1}, CharacteristicVector{1, 2}, CharacteristicVector{3, 1}}) {
    CHECK(flag_preserved(E, f, 6).preserved);
  }
}
