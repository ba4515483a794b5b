#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "picdesc/exactalg.hpp"

using namespace picdesc;
using namespace picdesc::exactalg;

namespace {

bool is_diagonal_chain(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && sgn(d(i, j)) != 0) return false;
  std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (sgn(d(i, i)) < 0) return false;
    if (sgn(d(i, i)) == 0) {
      if (sgn(d(i + 1, i + 1)) != 0) return false;
    } else if (!mpz_divisible_p(d(i + 1, i + 1).get_mpz_t(), d(i, i).get_mpz_t())) {
      return false;
    }
  }
  return true;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace

TEST_CASE("smith normal form on small examples") {
  SmithForm s = snf(IntMatrix::identity(3));
  CHECK(s.d == IntMatrix::identity(3));

  s = snf(IntMatrix{{2, 0}, {0, 3}});
  CHECK(s.d == (IntMatrix{{1, 0}, {0, 6}}));
  CHECK(s.u * IntMatrix{{2, 0}, {0, 3}} * s.v == s.d);

  IntMatrix m{{2, 4}, {6, 8}};
  s = snf(m);
  CHECK(s.d == (IntMatrix{{2, 0}, {0, 4}}));
  CHECK(s.u * m * s.v == s.d);
  CHECK(unimodular_inverse(s.u) * s.d * unimodular_inverse(s.v) == m);
}

TEST_CASE("zero and rectangular matrices") {
  SmithForm s = snf(IntMatrix(2, 3));
  CHECK(s.rank == 0);
  IntMatrix m{{0, 0, 4}, {0, 6, 0}};
  s = snf(m);
  CHECK(s.u * m * s.v == s.d);
  CHECK(s.d(0, 0) == 2);
  CHECK(s.d(1, 1) == 12);
}

TEST_CASE("random smith forms agree with determinantal divisors") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    IntMatrix m = random_matrix(rng, dim(rng), dim(rng), -50, 50);
    if (trial % 7 == 0 && m.rows() > 1)  // force rank deficiency now and then
      for (std::size_t j = 0; j < m.cols(); ++j) m(1, j) = 3 * m(0, j);
    SmithForm s = snf(m);
    REQUIRE(s.u * m * s.v == s.d);
    CHECK(unimodular_inverse(s.u) * s.d * unimodular_inverse(s.v) == m);
    CHECK(is_diagonal_chain(s.d));
    CHECK(s.diagonal() == oracle::determinantal_invariants(m));
  }
}

TEST_CASE("kernel basis is saturated and annihilated") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_matrix(rng, 3, 6, -5, 5);
    IntMatrix k = kernel_basis(m);
    CHECK((m * k).is_zero());
    CHECK(k.cols() == 6 - rank(m));
    // saturated: elementary divisors of the basis are all 1
    for (const auto& e : elementary_divisors(k)) CHECK(e == 1);
  }
}

TEST_CASE("cohomology_at examples") {
  CHECK(cohomology_at(IntMatrix{{2}}, IntMatrix(0, 1)).str() == "ℤ/2");
  CHECK(cohomology_at(IntMatrix{{2}}, IntMatrix{{0}}).str() == "ℤ/2");
  CHECK(cohomology_at(IntMatrix::identity(2), IntMatrix(1, 2)).is_trivial());
  // normalized Moore complex of constant ℤ, degree 1: ℤ -0-> ℤ -1-> ℤ
  CHECK(cohomology_at(IntMatrix{{0}}, IntMatrix{{1}}).is_trivial());
  CHECK_THROWS_AS(cohomology_at(IntMatrix(2, 1), IntMatrix(1, 3)), DimensionMismatch);
  CHECK_THROWS_AS(cohomology_at(IntMatrix{{1}}, IntMatrix{{1}}), NotAComplex);
}

TEST_CASE("cohomology coordinates") {
  // ℤ -(2,0)-> ℤ^2 -> 0 : ℤ/2 ⊕ ℤ
  FgAbGroup h = cohomology_at(IntMatrix{{2}, {0}}, IntMatrix(0, 2));
  CHECK(h.str() == "ℤ/2 ⊕ ℤ");
  CHECK(h.coordinates({Int(1), Int(0)}) == std::vector<Int>{1, 0});
  CHECK(h.coordinates({Int(2), Int(5)}) == std::vector<Int>{0, 5});
  CHECK(h.is_zero_class({Int(4), Int(0)}));
  for (std::size_t k = 0; k < h.ngens(); ++k) {
    auto c = h.coordinates(h.generator(k));
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == (i == k ? 1 : 0));
  }
}

TEST_CASE("homology of finite complexes matches brute-force coset enumeration") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> small(1, 3);
  const std::vector<long> moduli{2, 3, 4, 6, 8, 9, 12};
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 150; ++trial) {
    auto random_orders = [&](std::size_t n) {
      std::vector<Int> o;
      for (std::size_t i = 0; i < n; ++i) o.push_back(moduli[rng() % moduli.size()]);
      return o;
    };
    std::size_t b = small(rng) + 1, c = small(rng);
    std::vector<Int> ob = random_orders(b), oc = random_orders(c);
    Int size_b = 1;
    for (auto& x : ob) size_b *= x;
    if (size_b > 10000) continue;
    // g well defined: scale entries so relations map to relations
    IntMatrix g = random_matrix(rng, c, b, -3, 3);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < b; ++j) {
        Int q;
        mpz_gcd(q.get_mpz_t(), oc[i].get_mpz_t(), ob[j].get_mpz_t());
        g(i, j) *= oc[i] / q;
      }
    REQUIRE(oracle::well_defined(g, ob, oc));
    // f: free source, columns drawn from the brute-force kernel
    auto ker = oracle::brute_kernel(g, ob, oc);
    std::size_t a = rng() % 3;
    IntMatrix f(b, a);
    for (std::size_t j = 0; j < a; ++j) {
      const auto& x = ker[rng() % ker.size()];
      for (std::size_t i = 0; i < b; ++i) f(i, j) = x[i];
    }
    FgAbGroup h = homology(f, g, ob, oc);
    oracle::BruteHomology bh = oracle::brute_homology(f, g, ob, oc);
    CHECK(h.order() == bh.order);
    for (const auto& [n, count] : bh.killed_by) CHECK(oracle::killed_by_count(h.factors(), n) == count);
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("group order is invariant under change of presentation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix f = random_matrix(rng, 4, 3, -4, 4);
    // g kills the image of f
    IntMatrix left = kernel_basis(f.transpose()).transpose();
    IntMatrix g = random_matrix(rng, 2, left.rows(), -3, 3) * left;
    FgAbGroup h = cohomology_at(f, g);
    // random unimodular change of basis on the middle level
    IntMatrix p = IntMatrix::identity(4);
    for (int k = 0; k < 8; ++k) {
      std::size_t i = rng() % 4, j = rng() % 4;
      if (i != j) p.add_row(i, j, static_cast<long>(rng() % 5) - 2);
    }
    FgAbGroup h2 = cohomology_at(p * f, g * unimodular_inverse(p));
    CHECK(h == h2);
  }
}

TEST_CASE("mod p rank") {
  CHECK(modp_rank(IntMatrix{{2, 1}, {0, 2}}, 2) == 1);
  CHECK(modp_rank(IntMatrix{{2, 1}, {0, 2}}, 3) == 2);
  CHECK_THROWS_AS(modp_rank(IntMatrix{{1}}, 4), NotPrime);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m = random_matrix(rng, 7, 9, -1, 1);
    SparseModpMatrix s;
    s.ncols = 9;
    s.p = 3;
    s.rows.resize(7);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 9; ++j) s.add(i, j, m(i, j).get_si());
    CHECK(s.rank() == modp_rank(m, 3));
  }
}

TEST_CASE("sparse elimination agrees with dense smith form") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 2 + rng() % 9, c = 2 + rng() % 9;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 3 == 0) m(i, j) = static_cast<long>(rng() % 13) - 6;
    SparseSmith s = sparse_smith(SparseIntMatrix::from_dense(m));
    auto ed = elementary_divisors(m);
    CHECK(s.rank == ed.size());
    CHECK(FgAbGroup::from_factors(s.torsion) == FgAbGroup::from_factors(ed));
  }
}

TEST_CASE("sparse and dense complex cohomology agree with universal coefficients") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    // free complex ℤ^3 -> ℤ^4 -> ℤ^3
    IntMatrix f = random_matrix(rng, 4, 3, -3, 3);
    IntMatrix left = kernel_basis(f.transpose()).transpose();
    IntMatrix g = random_matrix(rng, 3, left.rows(), -2, 2) * left;
    for (long m : {2L, 4L, 6L}) {
      CochainComplex cc;
      cc.orders = {std::vector<Int>(3, m), std::vector<Int>(4, m), std::vector<Int>(3, m)};
      cc.d = {f, g};
      cc.validate();
      SparseCochainComplex sc;
      sc.orders = {std::vector<long long>(3, m), std::vector<long long>(4, m), std::vector<long long>(3, m)};
      sc.d = {SparseIntMatrix::from_dense(f), SparseIntMatrix::from_dense(g)};
      for (int s = 0; s < 3; ++s) {
        FgAbGroup dense = cc.cohomology(s);
        CHECK(dense == sc.cohomology(s));
        // H^s(C ⊗ ℤ/m) = H^s(C) ⊗ ℤ/m ⊕ Tor(H^{s+1}(C), ℤ/m)
        CochainComplex fc;
        fc.orders = {std::vector<Int>(3, 0), std::vector<Int>(4, 0), std::vector<Int>(3, 0)};
        fc.d = {f, g};
        CHECK(dense == oracle::universal_coefficients(fc.cohomology(s), fc.cohomology(s + 1), m));
      }
    }
  }
}
