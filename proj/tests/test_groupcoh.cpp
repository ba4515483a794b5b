#include <numeric>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "picdesc/errors.hpp"
#include "picdesc/groupcoh/cohomology.hpp"
#include "picdesc/groupcoh/io.hpp"

using namespace picdesc;
using namespace picdesc::groupcoh;

namespace {

std::vector<std::string> strs(const std::vector<FgAbGroup>& gs) {
  std::vector<std::string> out;
  for (const auto& g : gs) out.push_back(g.str());
  return out;
}

// For A = G/[G,G] from the table: #Hom(A, Z/m) = #{x in A : mx = 0}.
std::size_t abelian_m_torsion(const FiniteGroup& G, long m) {
  std::vector<std::size_t> comms;
  for (std::size_t a = 0; a < G.order(); ++a)
    for (std::size_t b = 0; b < G.order(); ++b)
      comms.push_back(G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b)));
  std::vector<std::size_t> sub = G.subgroup(comms);
  std::set<std::size_t> csub(sub.begin(), sub.end());
  std::vector<char> seen(G.order(), 0);
  std::size_t count = 0;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    for (auto x : sub) seen[G.mul(g, x)] = 1;
    if (csub.count(G.power(g, m))) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("matrix groups close to the expected orders") {
  auto g2 = load_group("gl2z2");
  auto g3 = load_group("gl2z3");
  CHECK(g2->order() == 6);
  CHECK(g3->order() == 48);
  CHECK(g2->element_order(g2->generators()[0]) == 3);
  CHECK(g2->element_order(g2->generators()[1]) == 2);
  // x(t) = -1/t: x^2 = -1 acts trivially on t
  std::size_t x = g3->generators()[0];
  CHECK(g3->matrix(g3->mul(x, x)) == Mat2{2, 0, 0, 2});
  for (std::size_t g = 0; g < g3->order(); ++g) {
    auto w = g3->word(g);
    std::size_t h = g3->identity();
    for (auto i : w) h = g3->mul(h, g3->generators()[i]);
    CHECK(h == g);
  }
}

TEST_CASE("module actions reproduce the stated formulas") {
  GModule m = load_module("units3");
  // x·(e,α,β,a,b,c) = (e+a+c, α+b-c, β, -a-b-c, c, b)
  std::vector<Int> v{1, 2, 5, 7, 11, 13};
  auto r = m.generator_action(0).apply(v);
  exactalg::reduce_vector(r, m.orders());
  CHECK(r == std::vector<Int>{(1 + 7 + 13) % 2, ((2 + 11 - 13) % 3 + 3) % 3, 5, -31, 13, 11});
  CHECK_THROWS_AS(GModule(m.group_ptr(), m.orders(), {},
                          {m.generator_action(0), m.generator_action(0), m.generator_action(2),
                           m.generator_action(3)}),
                  InvalidAction);
}

TEST_CASE("invariants") {
  GModule u2 = load_module("units2");
  FgAbGroup h0 = invariants(u2);
  CHECK(h0.str() == "ℤ/2 ⊕ ℤ");
  // fixed pointwise by every generator
  for (std::size_t k = 0; k < h0.ngens(); ++k)
    for (std::size_t i = 0; i < 2; ++i) {
      auto x = h0.generator(k);
      auto y = u2.generator_action(i).apply(x);
      for (std::size_t c = 0; c < y.size(); ++c) y[c] -= x[c];
      CHECK(exactalg::zero_mod(y, u2.orders()));
    }
  CHECK(invariants(load_module("z4_gl2z2")).str() == "ℤ/4");
  CHECK(invariants(load_module("zsign_c2")).is_trivial());
}

TEST_CASE("first cohomology from crossed homomorphisms") {
  CHECK(h1_crossed(load_module("units3")).str() == "ℤ/12");
  CHECK(h1_crossed(load_module("units2")).str() == "ℤ/6");
  CHECK(h1_crossed(load_module("zsign_c2")).str() == "ℤ/2");
  CHECK(h1_crossed(load_module("z_c2")).is_trivial());
}

TEST_CASE("H1 of a trivial module is Hom from the abelianization") {
  for (const char* name : {"z4_gl2z2", "z2_gl2z3"}) {
    GModule m = load_module(name);
    CHECK(h1_crossed(m).order() == abelian_m_torsion(m.group(), m.orders()[0].get_si()));
  }
  // Hom(G, Z) = 0 for finite G
  CHECK(h1_crossed(load_module("z_c2")).is_trivial());
  CHECK(abelian_m_torsion(*load_group("gl2z3"), 48) == 2);
  CHECK(abelian_m_torsion(*load_group("gl2z2"), 6) == 2);
}

TEST_CASE("group order annihilates H1 on every shipped module") {
  for (const char* name : {"units2", "units3", "z4_gl2z2", "z2_gl2z3", "z_c2", "zsign_c2"}) {
    GModule m = load_module(name);
    FgAbGroup h = h1_crossed(m);
    CHECK(h.is_finite());
    for (const auto& d : h.factors()) CHECK(Int(static_cast<long>(m.group().order())) % d == 0);
  }
}

TEST_CASE("cyclic group cohomology") {
  GModule zt = load_module("z_c2"), zs = load_module("zsign_c2");
  std::size_t g = zt.group().generators()[0];
  CHECK(cyclic_h(zt, g, 2).str() == "ℤ/2");
  CHECK(cyclic_h(zt, g, 1).is_trivial());
  CHECK(cyclic_h(zs, g, 1).str() == "ℤ/2");
  CHECK(cyclic_h(zs, g, 2).is_trivial());
  GModule u2 = load_module("units2");
  std::size_t sigma = u2.group().generators()[0];
  CHECK(cyclic_h(u2, sigma, 1).str() == "ℤ/3");
  CHECK(cyclic_h(u2, sigma, 0).str() == "ℤ/2 ⊕ ℤ");
  for (int s = 1; s <= 8; ++s) CHECK(cyclic_h(u2, sigma, s).str() == "ℤ/3");
}

TEST_CASE("bar resolution") {
  CHECK(strs(bar_h(load_module("z4_gl2z2"), 3)) == std::vector<std::string>{"ℤ/4", "ℤ/2", "ℤ/2", "ℤ/2"});
  CHECK(strs(bar_h(load_module("z_c2"), 2)) == std::vector<std::string>{"ℤ", "0", "ℤ/2"});
  CHECK(bar_h(load_module("z2_gl2z3"), 1)[1].str() == "ℤ/2");
  CHECK_THROWS_AS(bar_h(load_module("units3"), 4), BudgetExceeded);
}

TEST_CASE("bar, cyclic and crossed-homomorphism routes agree") {
  for (const char* name : {"z_c2", "zsign_c2"}) {
    GModule m = load_module(name);
    auto bar = bar_h(m, 4);
    for (int s = 0; s <= 4; ++s) CHECK(bar[s] == cyclic_h(m, m.group().generators()[0], s));
  }
  for (const char* name : {"units2", "z4_gl2z2", "units3", "z2_gl2z3"}) {
    GModule m = load_module(name);
    auto bar = bar_h(m, 1);
    CHECK(bar[0] == invariants(m));
    CHECK(bar[1] == h1_crossed(m));
  }
}

TEST_CASE("mod p dimensions") {
  auto g2 = load_group("gl2z2");
  CHECK(modp_bar_dims(*g2, 3, 2) == std::vector<std::size_t>{1, 0, 0});
  CHECK(modp_resolution_dims(*g2, 3, 4) == std::vector<std::size_t>{1, 0, 0, 1, 1});
  CHECK(modp_bar_dims(*g2, 2, 3) == modp_resolution_dims(*g2, 2, 3));
  CHECK(modp_resolution_dims(*load_group("c2"), 2, 5) == std::vector<std::size_t>(6, 1));
  auto g3 = load_group("gl2z3");
  CHECK(modp_bar_dims(*g3, 2, 1) == std::vector<std::size_t>{1, 1});
  CHECK(modp_resolution_dims(*g3, 2, 3) == std::vector<std::size_t>{1, 1, 1, 2});
  CHECK_THROWS_AS(modp_bar_dims(*g2, 4, 1), NotPrime);
}

TEST_CASE("LHS assembly for the units module of TMF(2)") {
  GModule m = load_module("units2");
  LhsResult r = lhs_assemble(m, {m.group().generators()[0]}, 8);
  CHECK(r.normal_order == 3);
  CHECK(r.collapses);
  CHECK(r.rows[0].str() == "ℤ/2 ⊕ ℤ");
  for (int q = 1; q <= 8; ++q) {
    CHECK(r.rows[q].str() == "ℤ/3");
    CHECK(r.row_action[q] == ((q % 4 == 0 || q % 4 == 1) ? "trivial" : "sgn"));
  }
  std::vector<std::string> expect{"ℤ/2 ⊕ ℤ", "ℤ/6", "ℤ/2 ⊕ ℤ/2", "ℤ/2", "ℤ/2 ⊕ ℤ/6",
                                  "ℤ/6",     "ℤ/2 ⊕ ℤ/2", "ℤ/2", "ℤ/2 ⊕ ℤ/6"};
  for (int s = 0; s <= 8; ++s) {
    CHECK(r.resolved[s]);
    CHECK(r.total[s].str() == expect[s]);
  }
  auto bar = bar_h(m, 4);
  for (int s = 0; s <= 4; ++s) CHECK(bar[s] == r.total[s]);
}

TEST_CASE("LHS assembly for the trivial module Z/4") {
  GModule m = load_module("z4_gl2z2");
  LhsResult r = lhs_assemble(m, {m.group().generators()[0]}, 8);
  CHECK(r.collapses);
  CHECK(r.total[0].str() == "ℤ/4");
  for (int s = 1; s <= 8; ++s) CHECK(r.total[s].str() == "ℤ/2");
  auto bar = bar_h(m, 4);
  for (int s = 0; s <= 4; ++s) CHECK(bar[s] == r.total[s]);
}

TEST_CASE("LHS with trivial normal subgroup is the quotient cohomology") {
  GModule m = load_module("z4_gl2z2");
  LhsResult r = lhs_assemble(m, {}, 3);
  auto bar = bar_h(m, 3);
  for (int p = 0; p <= 3; ++p) {
    CHECK(r.at(p, 0) == bar[p]);
    for (int q = 1; p + q <= 3; ++q) CHECK(r.at(p, q).is_trivial());
  }
}

TEST_CASE("LHS errors") {
  GModule m = load_module("z4_gl2z2");
  CHECK_THROWS_AS(lhs_assemble(m, {m.group().generators()[1]}, 2), NotNormal);
  GModule u3 = load_module("z2_gl2z3");
  const auto& G = u3.group();
  // Q8 = <x, y> is normal but not cyclic
  CHECK_THROWS_AS(lhs_assemble(u3, {G.generators()[0], G.generators()[1]}, 1), NotCyclic);
}
