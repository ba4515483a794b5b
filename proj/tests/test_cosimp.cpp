#include "doctest.h"
#include "picdesc/cosimp/cosimplicial.hpp"
#include "picdesc/errors.hpp"

using namespace picdesc;
using namespace picdesc::cosimp;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::string> strs(const std::vector<FgAbGroup>& gs) {
  std::vector<std::string> out;
  for (const auto& g : gs) out.push_back(g.str());
  return out;
}

std::vector<std::string> only_at(std::size_t S, std::size_t s, const std::string& g) {
  std::vector<std::string> out(S + 1, "0");
  out[s] = g;
  return out;
}

}  // namespace

TEST_CASE("cycle model ranks") {
  auto c = cycles_cosimplicial(2, 6);
  CHECK(c.dim(2) == 0);
  CHECK(c.dim(3) == 1);
  for (std::size_t n = 0; n <= 6; ++n) CHECK(c.dim(n) == binom(n, 3));
  auto c4 = cycles_cosimplicial(2, 4);
  CHECK(c4.dim(4) == 4);
  CHECK_THROWS_AS(cycles_cosimplicial(3, 4), TruncationTooSmall);
}

TEST_CASE("structure maps satisfy the cosimplicial identities") {
  for (int d = 0; d <= 3; ++d) CHECK_NOTHROW(cycles_cosimplicial(d, d + 4).validate());
  auto a = universal_A(2);
  CHECK_NOTHROW(sym2(a, false).validate());
  CHECK_NOTHROW(sym2(a, true).validate());
  CHECK_NOTHROW(direct_sum(a, constant(2, a.top())).validate());

  auto bad = constant(1, 3);
  bad.coface[2][1].rows[0][0].val = 2;
  CHECK_THROWS_AS(bad.validate(), IdentityViolated);
}

TEST_CASE("constant cosimplicial groups") {
  CHECK(strs(moore_cohomology(constant(1, 5), 4)) == only_at(4, 0, "ℤ"));
  CHECK(strs(moore_cohomology(constant(2, 5), 4)) == only_at(4, 0, "ℤ ⊕ ℤ"));
  CHECK(strs(moore_cohomology(sym2(constant(1, 5), true), 4)) == only_at(4, 0, "ℤ/2"));
  CHECK(strs(moore_cohomology(sym2(constant(1, 5), false), 4)) == only_at(4, 0, "ℤ"));
  CHECK_THROWS_AS(moore_cohomology(constant(1, 5), 5), WindowExceedsTruncation);
}

TEST_CASE("cycle models have a single integral class") {
  auto a2 = universal_A(2, 8);
  CHECK(strs(moore_cohomology(a2, 7)) == only_at(7, 3, "ℤ"));
  auto b2 = universal_B(2, 9);
  CHECK(strs(moore_cohomology(b2, 8)) == only_at(8, 6, "ℤ"));
  for (int d = 0; d <= 3; ++d) {
    auto c = cycles_cosimplicial(d, d + 5);
    CHECK(strs(moore_cohomology(c, d + 4)) == only_at(d + 4, d + 1, "ℤ"));
  }
}

TEST_CASE("normalized and unnormalized complexes agree") {
  for (int d = 0; d <= 2; ++d) {
    auto c = cycles_cosimplicial(d, d + 4);
    CHECK(strs(normalized_cohomology(c, d + 3)) == strs(moore_cohomology(c, d + 3)));
  }
  auto c = constant(3, 4);
  CHECK(strs(normalized_cohomology(c, 3)) == strs(moore_cohomology(c, 3)));
  CHECK_THROWS_AS(normalized_cohomology(sym2(constant(1, 4), true), 2), NotFree);
}

TEST_CASE("mod p dimensions match integral cohomology by universal coefficients") {
  auto a = universal_A(2, 7);
  auto h = moore_cohomology(a, 6);
  for (long p : {2L, 3L}) {
    auto dims = modp_moore_dims(a, p, 6);
    for (std::size_t s = 0; s <= 6; ++s) {
      std::size_t expect = h[s].free_rank();
      for (const auto& f : h[s].torsion())
        if (mpz_divisible_ui_p(f.get_mpz_t(), p)) ++expect;
      if (s + 1 <= 6)
        for (const auto& f : h[s + 1].torsion())
          if (mpz_divisible_ui_p(f.get_mpz_t(), p)) ++expect;
      CHECK(dims[s] == expect);
    }
  }
  CHECK_THROWS_AS(modp_moore_dims(a, 4, 3), NotPrime);
}

TEST_CASE("sym2 is compatible with reduction mod 2") {
  auto a = universal_A(2, 6);
  auto s = sym2(a, false), t = sym2(a, true);
  for (std::size_t n = 1; n <= a.top(); ++n)
    for (std::size_t i = 0; i <= n; ++i) {
      auto x = s.coface[n][i].dense(), y = t.coface[n][i].dense();
      REQUIRE(x.rows() == y.rows());
      for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t k = 0; k < x.cols(); ++k) {
          Int diff = x(r, k) - y(r, k);
          CHECK(mpz_divisible_ui_p(diff.get_mpz_t(), 2));
        }
    }
  CHECK_THROWS_AS(sym2(sym2(a, true), false), NotFree);
}

TEST_CASE("square of the fundamental class") {
  SUBCASE("t = 2, untwisted") {
    auto a = universal_A(2, 8);
    auto iota = fundamental_cocycle(a, 3);
    auto s = sym2(a, false);
    auto h = moore_cohomology(s, 7);
    CHECK(h[6].str() == "ℤ/2");
    auto sq = cup_square(a, iota, 3, false);
    // a cocycle whose class survives mod 2 generates ℤ/2
    CHECK(s.alternating(6).dense().apply(sq) == std::vector<Int>(s.dim(7), 0));
    CHECK(nonzero_mod_p(s, 6, sq, 2));
  }
  SUBCASE("t = 3, twisted") {
    auto a = universal_A(3, 10);
    auto iota = fundamental_cocycle(a, 4);
    auto s = sym2(a, true);
    auto h = moore_cohomology(s, 9);
    CHECK(h[8].str() == "ℤ/2");
    auto sq = cup_square(a, iota, 4, true);
    auto img = s.alternating(8).dense().apply(sq);
    for (std::size_t r = 0; r < img.size(); ++r)
      if (sgn(s.orders[9][r]) != 0)
        CHECK(mpz_divisible_p(img[r].get_mpz_t(), s.orders[9][r].get_mpz_t()));
      else
        CHECK(sgn(img[r]) == 0);
    CHECK(nonzero_mod_p(s, 8, sq, 2));
  }
  CHECK_THROWS_AS(fundamental_cocycle(universal_A(2, 6), 2), HypothesisFailed);
}

TEST_CASE("symmetric square mod 2") {
  CHECK(priddy_dims(universal_A(2, 9), 2, 8) == std::vector<std::size_t>{0, 0, 0, 1, 1, 1, 1, 0, 0});
  CHECK(priddy_dims(universal_A(3, 10), 3, 9) == std::vector<std::size_t>{0, 0, 0, 0, 1, 1, 1, 1, 1, 0});
  CHECK_THROWS_AS(priddy_dims(constant(2, 4), 1, 3), HypothesisFailed);
  CHECK(priddy_dims(constant(0, 4), 1, 3) == std::vector<std::size_t>{0, 0, 0, 0});
}

TEST_CASE("B plus the square gives Z/2 + Z in the top degree") {
  for (int t : {2, 3}) {
    auto a = universal_A(t, 2 * t + 4);
    auto b = universal_B(t, 2 * t + 4);
    auto sum = direct_sum(b, sym2(a, t % 2 == 1));
    auto h = moore_cohomology(sum, 2 * t + 2);
    CHECK(h[2 * t + 2].factors() == std::vector<Int>{2, 0});
  }
}

TEST_CASE("integral and mod 2 cohomology of the square are consistent") {
  auto a = universal_A(2, 8);
  auto s = sym2(a, false);
  auto h = moore_cohomology(s, 7);
  auto dims = modp_moore_dims(s, 2, 6);
  for (std::size_t k = 0; k <= 6; ++k) {
    std::size_t expect = h[k].free_rank();
    for (const auto& f : h[k].torsion())
      if (mpz_divisible_ui_p(f.get_mpz_t(), 2)) ++expect;
    for (const auto& f : h[k + 1].torsion())
      if (mpz_divisible_ui_p(f.get_mpz_t(), 2)) ++expect;
    CHECK(dims[k] == expect);
  }
}
