#include <algorithm>
#include <random>

#include "doctest.h"
#include "picdesc/errors.hpp"
#include "picdesc/ssengine/dataset.hpp"

using namespace picdesc;
using namespace picdesc::ssengine;

namespace {

struct Loaded {
  ChartDataset d;
  std::shared_ptr<const E2Chart> e2;
  RingRules rules;
};

Loaded load(const std::string& name, std::optional<int> D = std::nullopt) {
  Loaded l{load_chart_dataset(name, D), nullptr, {}};
  l.e2 = e2_from_dataset(l.d);
  l.rules = dataset_rules(l.d, *l.e2);
  return l;
}

Poly P(const Algebra& A, const std::string& s) { return A.parse(s); }

// d_r of a monomial label read off the closed rules
std::string d_of(const LeibnizResult& lr, const Algebra& A, const std::string& m) {
  auto it = lr.d.find(A.parse_monomial(m));
  REQUIRE(it != lr.d.end());
  return A.format(it->second);
}

Json tiny(const std::string& rel) {
  return Json::parse(R"({"name": "tiny", "window": {"s_max": 6, "stem_min": -6, "stem_max": 6},
    "generators": [{"name": "x", "s": 1, "t": 2}, {"name": "y", "s": 1, "t": 2}],
    "relations": )" + rel + "}");
}

}  // namespace

TEST_CASE("algebra parse and format round trip") {
  auto l = load("tmf2");
  const Algebra& A = *l.d.algebra;
  CHECK(A.format(P(A, "-a b^5 Δ^-2")) == "-ab^5Δ^-2");
  CHECK(A.format(P(A, "c4^3")) == "Δj");
  CHECK(A.format(P(A, "c6^2")) == "-1728Δ + Δj");
  CHECK(A.format(P(A, "3 a b")) == "0");
  CHECK(A.format(P(A, "a a")) == "0");
  CHECK(A.format(P(A, "c4 b")) == "0");
  CHECK(P(A, "j^25").empty());  // truncated
  CHECK_THROWS_AS(A.parse("zz"), DataError);
  CHECK_THROWS_AS(A.parse("b^-1"), DataError);
}

TEST_CASE("graded commutativity signs") {
  Algebra A;
  A.gens = {{"x", 1, 2}, {"y", 1, 3}};  // stems 1 and 2
  // squares of odd classes are left to the relations and order rules
  CHECK(A.mul(A.mono(A.unit(0)), A.mono(A.unit(0))).size() == 1);
  Algebra B;
  B.gens = {{"u", 1, 3}, {"v", 2, 5}};  // stems 2 and 3
  auto uv = B.mul(B.mono(B.unit(0)), B.mono(B.unit(1)));
  auto vu = B.mul(B.mono(B.unit(1)), B.mono(B.unit(0)));
  CHECK(uv == vu);
  Algebra C;
  C.gens = {{"u", 0, 1}, {"v", 2, 5}};  // odd stems
  auto a = C.mul(C.mono(C.unit(0)), C.mono(C.unit(1)));
  auto b = C.mul(C.mono(C.unit(1)), C.mono(C.unit(0)));
  REQUIRE(a.size() == 1);
  CHECK(a.begin()->second == -b.begin()->second);
}

TEST_CASE("confluence is checked") {
  CHECK_NOTHROW(e2_from_dataset(chart_dataset_from_json(tiny(R"([{"lhs": "x^2", "rhs": "0"}])"))));
  // x^2 y -> y^3 one way, 0 the other
  auto bad = chart_dataset_from_json(tiny(R"([{"lhs": "x^2", "rhs": "y^2"}, {"lhs": "x y", "rhs": "0"}])"));
  CHECK_THROWS_AS(e2_from_dataset(bad), NonConfluentRelations);
}

TEST_CASE("empty window") {
  auto j = tiny("[]");
  j["window"]["stem_min"] = 3;
  j["window"]["stem_max"] = 2;
  CHECK_THROWS_AS(e2_from_dataset(chart_dataset_from_json(j)), WindowEmpty);
}

TEST_CASE("Leibniz closure on the 3-local chart") {
  auto l = load("tmf2");
  const Algebra& A = *l.d.algebra;
  const auto& d5 = l.rules.leibniz.at(5);
  CHECK(d_of(d5, A, "Δ") == "ab^2");
  CHECK(d_of(d5, A, "b^3 Δ^-1") == "-ab^5Δ^-2");
  CHECK(d_of(d5, A, "b^5 Δ^-2") == "ab^7Δ^-3");
  CHECK(d_of(d5, A, "Δ^-1") == "-ab^2Δ^-2");
  CHECK(d_of(d5, A, "Δ^3") == "0");
  CHECK(d5.d.at(A.one()).empty());
  const auto& d9 = l.rules.leibniz.at(9);
  CHECK(d_of(d9, A, "a b^2 Δ^-1") == "b^7Δ^-3");
  CHECK(d_of(d9, A, "a Δ^-1") == "b^5Δ^-3");
}

TEST_CASE("Leibniz closure does not depend on seed order") {
  auto d = load_chart_dataset("tmf2");
  auto e2 = e2_from_dataset(d);
  auto base = dataset_rules(d, *e2);
  std::mt19937 rng(7);
  for (int k = 0; k < 3; ++k) {
    auto d2 = d;
    std::shuffle(d2.differentials.begin(), d2.differentials.end(), rng);
    std::shuffle(d2.permanent.begin(), d2.permanent.end(), rng);
    auto other = dataset_rules(d2, *e2);
    for (int r : {5, 9}) CHECK(other.leibniz.at(r).d == base.leibniz.at(r).d);
  }
}

TEST_CASE("inconsistent seeds are rejected") {
  auto d = load_chart_dataset("tmf2");
  d.differentials.push_back({5, "Δ^-1", "a b^2 Δ^-2", Provenance::Supplied, ""});
  auto e2 = e2_from_dataset(d);
  CHECK_THROWS_AS(dataset_rules(d, *e2), RuleNotClosed);
  auto d2 = load_chart_dataset("tmf2");
  d2.differentials.push_back({5, "b", "a", Provenance::Supplied, ""});
  CHECK_THROWS_AS(dataset_rules(d2, *e2_from_dataset(d2)), RuleNotClosed);
}

TEST_CASE("ring spectral sequence pages are chain complexes") {
  for (const char* name : {"ko", "tmf2", "tmf3"}) {
    CAPTURE(name);
    auto l = load(name, 6);
    auto p = ChartPage::initial(l.e2);
    int last = l.d.last_page;
    while (p->r() <= last) {
      auto rr = rules_of_page(l.rules.rules, p->r());
      for (const auto& [b, g] : p->cells()) {
        const Bidegree tb = b + dr_offset(p->r());
        if (!p->e2().window.contains(tb) || !p->e2().window.contains(tb + dr_offset(p->r()))) continue;
        auto d1 = page_differential(*p, rr, b);
        auto d2 = page_differential(*p, rr, tb);
        auto dd = d2 * d1;
        auto tt = tb + dr_offset(p->r());
        for (std::size_t j = 0; j < dd.cols(); ++j) CHECK(exactalg::zero_mod(dd.column(j), p->group(tt).factors()));
      }
      auto next = turn_page(p, rr);
      // subquotient: orders can only drop
      for (const auto& [b, g] : next->cells()) {
        CHECK(g.free_rank() <= p->group(b).free_rank());
        if (p->group(b).is_finite()) CHECK(p->group(b).order() % g.order() == 0);
      }
      p = next;
    }
  }
}

TEST_CASE("zero differentials leave the page unchanged") {
  auto l = load("ko", 4);
  auto p = ChartPage::initial(l.e2);
  auto q = turn_page(p, {});
  for (const auto& [b, g] : p->cells()) CHECK(q->group(b) == g);
}

TEST_CASE("KO ring page 4") {
  auto l = load("ko");
  auto p = run_pages(ChartPage::initial(l.e2), l.rules.rules, 3);
  CHECK(p->r() == 4);
  // π_0, π_1, π_2, π_4 survive; π_3 dies
  CHECK(p->group({0, 0}).str() == "ℤ");
  CHECK(p->group({1, 2}).str() == "ℤ/2");
  CHECK(p->group({2, 4}).str() == "ℤ/2");
  CHECK(p->group({3, 6}).is_trivial());
  CHECK(p->group({0, 4}).str() == "ℤ");
  CHECK(p->group({4, 8}).is_trivial());
  CHECK(p->group({0, 8}).str() == "ℤ");
}

TEST_CASE("import rule") {
  auto ko = load("ko");
  auto tmf2 = load("tmf2");
  // a fake pic chart that is just the ring chart shifted in t
  auto shifted = [](const E2Chart& ring) {
    auto c = std::make_shared<E2Chart>();
    c->name = ring.name + "-pic";
    c->window = {ring.window.s_max, ring.window.stem_min + 1, ring.window.stem_max + 1};
    for (const auto& [b, basis] : ring.cells)
      if (b.t >= 1) c->cells[{b.s, b.t + 1}] = basis;
    return c;
  };
  auto kp = shifted(*ko.e2);
  auto ki = import_comparison(rules_of_page(ko.rules.rules, 3), *kp);
  auto has = [](const std::vector<DifferentialRule>& v, Bidegree b, int r) {
    return std::any_of(v.begin(), v.end(), [&](const auto& x) { return x.source == b && x.r == r; });
  };
  // ring d3 on h1^4 u2^-1 at (4,4) -> pic (4,5): 3 <= 4
  CHECK(has(ki.imported, {4, 5}, 3));
  auto tp = shifted(*tmf2.e2);
  auto ti = import_comparison(rules_of_page(tmf2.rules.rules, 9), *tp);
  // ring d9 on a b^2 Δ^-1 at (5,4) -> pic (5,5): 9 > 4 and t - s = 0
  CHECK(!has(ti.imported, {5, 5}, 9));
  CHECK(std::any_of(ti.rejected.begin(), ti.rejected.end(), [](const Rejection& r) {
    return r.rule.source == Bidegree{5, 4} && r.rule.r == 9;
  }));
  // t - s > 0 and s > 0 always imports
  for (const auto& r : ti.imported) {
    const int t = r.source.t, s = r.source.s;
    CHECK(((2 <= r.r && r.r <= t - 1) || (t - s > 0 && s > 0)));
  }
  CHECK(ti.imported.empty());  // the only d9 with target in the window is the rejected one
}

TEST_CASE("unstable operator kernels") {
  // one cell of ℤ/2[q] truncated: f -> d(f) + f^2 with d = 0 on the q-line is f + f^2 here
  auto build = [](int D, bool jtwist) {
    auto c = std::make_shared<E2Chart>();
    c->name = "toy";
    c->window = {8, -4, 4};
    for (int e = 0; e <= D; ++e) {
      c->cells[{2, 2}].push_back({"f q^" + std::to_string(e), 2, std::nullopt});
      c->cells[{4, 3}].push_back({"g q^" + std::to_string(e), 2, std::nullopt});
    }
    IntMatrix rd(D + 1, D + 1), sq(D + 1, D + 1);
    for (int e = 0; e <= D; ++e) {
      rd(e, e) = 1;  // d(f q^e) = g q^e
      int k = 2 * e + (jtwist ? 1 : 0);
      if (k <= D) sq(k, e) = 1;
    }
    return std::make_tuple(c, rd, sq);
  };
  {
    auto [c, rd, sq] = build(24, false);
    auto p = ChartPage::initial(c);
    auto u = unstable_first_differential(*p, {2, 1}, rd, sq);
    CHECK(u.kernel.str() == "ℤ/2");
  }
  {
    auto [c, rd, sq] = build(24, true);
    auto p = ChartPage::initial(c);
    auto u = unstable_first_differential(*p, {2, 1}, rd, sq);
    CHECK(u.kernel.is_trivial());
  }
  {
    auto [c, rd, sq] = build(6, false);
    IntMatrix zero(7, 7);
    for (int e = 0; e < 7; ++e) rd(e, e) = e % 2;  // d kills odd powers only
    auto p = ChartPage::initial(c);
    auto u = unstable_first_differential(*p, {2, 1}, rd, zero);
    CHECK(u.kernel.order() == 16);  // ker d: q^0, q^2, q^4, q^6
  }
  {
    auto [c, rd, sq] = build(3, false);
    c->cells[{2, 2}][0].order = 4;
    auto p = ChartPage::initial(c);
    CHECK_THROWS_AS(unstable_first_differential(*p, {2, 1}, rd, sq), NotCharTwo);
  }
}
