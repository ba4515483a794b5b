#include <functional>
#include <map>

#include "doctest.h"
#include "picdesc/cech/cech.hpp"
#include "picdesc/errors.hpp"
#include "picdesc/exactalg/complex.hpp"

using namespace picdesc;
using namespace picdesc::cech;
using exactalg::Int;
using exactalg::IntMatrix;

namespace {

// Brute force: the Čech complex in one degree, with every exponent clipped to [-B, B].
// Clipping keeps whole multidegrees, so it is a direct summand with the same cohomology
// once B exceeds every exponent of a class.
std::vector<FgAbGroup> box_oracle(const std::vector<int>& d, int degree, int B) {
  const std::size_t n = d.size();
  std::vector<std::vector<std::uint32_t>> terms(n);
  for (std::uint32_t I = 1; I < (1u << n); ++I) terms[__builtin_popcount(I) - 1].push_back(I);
  // monomials of the localization at I in this degree
  auto monos = [&](std::uint32_t I) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(n);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rest) {
      if (i == n) {
        if (rest == 0) out.push_back(e);
        return;
      }
      int lo = (I >> i & 1) ? -B : 0;
      for (int v = lo; v <= B; ++v) {
        e[i] = v;
        rec(i + 1, rest - v * d[i]);
      }
    };
    rec(0, degree);
    return out;
  };
  // basis of C^k: (I, monomial)
  std::vector<std::vector<std::pair<std::uint32_t, std::vector<int>>>> basis(n);
  for (std::size_t k = 0; k < n; ++k)
    for (auto I : terms[k])
      for (auto& m : monos(I)) basis[k].push_back({I, m});
  exactalg::CochainComplex cx;
  for (std::size_t k = 0; k < n; ++k) cx.orders.emplace_back(basis[k].size(), 0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::map<std::pair<std::uint32_t, std::vector<int>>, std::size_t> idx;
    for (std::size_t r = 0; r < basis[k + 1].size(); ++r) idx[basis[k + 1][r]] = r;
    IntMatrix m(basis[k + 1].size(), basis[k].size());
    for (std::size_t c = 0; c < basis[k].size(); ++c) {
      auto [I, e] = basis[k][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (I >> j & 1) continue;
        std::uint32_t J = I | (1u << j);
        int pos = 0;
        for (std::size_t q = 0; q < j; ++q) pos += J >> q & 1;
        m(idx.at({J, e}), c) += (pos % 2 == 0) ? 1 : -1;
      }
    }
    cx.d.push_back(m);
  }
  cx.validate();
  std::vector<FgAbGroup> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(cx.cohomology(static_cast<int>(k)));
  return out;
}

}  // namespace

TEST_CASE("plane minus the origin") {
  GradedCechProblem p;
  p.degrees = {1, 1};
  p.lo = -2;
  p.hi = 0;
  auto r = cech_graded(p);
  CHECK(r.h[-2][1].str() == "ℤ");
  CHECK(r.h[-2][1].labels() == std::vector<std::string>{"x^-1y^-1"});
  CHECK(r.h[-2][0].is_trivial());
  CHECK(r.h[0][0].str() == "ℤ");
  CHECK(r.h[0][1].is_trivial());
  CHECK(r.h[-1][0].is_trivial());
  CHECK(r.h[-1][1].is_trivial());
  for (int m = -2; m <= 0; ++m) {
    auto o = box_oracle(p.degrees, m, 6);
    CHECK(r.h[m][0] == o[0]);
    CHECK(r.h[m][1] == o[1]);
  }
}

TEST_CASE("three variables: middle cohomology vanishes") {
  GradedCechProblem p;
  p.degrees = {1, 1, 1};
  p.lo = -6;
  p.hi = 2;
  auto r = cech_graded(p);
  for (int m = -6; m <= 2; ++m) {
    CHECK(r.h[m][1].is_trivial());
    if (m >= 0) CHECK(r.h[m][2].is_trivial());
    CHECK(r.h[m][0].free_rank() == ring_piece_rank(p.degrees, m));
    auto o = box_oracle(p.degrees, m, 7);
    for (int k = 0; k < 3; ++k) CHECK(r.h[m][k] == o[k]);
  }
  CHECK(r.h[-3][2].str() == "ℤ");
  CHECK(r.h[-4][2].free_rank() == 3);
}

TEST_CASE("weighted degrees and shifted summands") {
  GradedCechProblem p;
  p.degrees = {1, 2};
  p.shifts = {0, 3};
  p.lo = -6;
  p.hi = 3;
  auto r = cech_graded(p);
  for (int m = p.lo; m <= p.hi; ++m) {
    auto a = box_oracle(p.degrees, m, 10), b = box_oracle(p.degrees, m + 3, 10);
    for (int k = 0; k < 2; ++k) CHECK(r.h[m][k] == a[k].direct_sum(b[k]));
    CHECK(r.h[m][0].free_rank() == ring_piece_rank(p.degrees, m) + ring_piece_rank(p.degrees, m + 3));
  }
  GradedCechProblem q;
  q.degrees = {2, 1, 3, 1};
  q.lo = -9;
  q.hi = 1;
  auto s = cech_graded(q);
  for (int m = q.lo; m <= q.hi; ++m) {
    CHECK(s.h[m][1].is_trivial());
    CHECK(s.h[m][2].is_trivial());
  }
}

TEST_CASE("pattern complexes") {
  auto all = pattern_cohomology(3, {0, 1, 2});
  CHECK(all[2].str() == "ℤ");
  auto none = pattern_cohomology(3, {});
  CHECK(none[0].str() == "ℤ");
  CHECK(none[1].is_trivial());
  CHECK(none[2].is_trivial());
  for (auto h : pattern_cohomology(4, {1, 3})) CHECK(h.is_trivial());
}

TEST_CASE("cech errors") {
  GradedCechProblem p;
  p.degrees = {0, 1};
  CHECK_THROWS_AS(cech_graded(p), WindowUnbounded);
  p.degrees = {1};
  CHECK_THROWS_AS(cech_graded(p), DataError);
}
