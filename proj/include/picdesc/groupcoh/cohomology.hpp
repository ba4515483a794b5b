#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "picdesc/groupcoh/module.hpp"

namespace picdesc::groupcoh {

constexpr double kDefaultBarBudget = 1e7;

// H^0: common kernel of (A_i - 1).
FgAbGroup invariants(const GModule& m);

// H^1 as crossed homomorphisms modulo principal ones, from Cayley-graph constraints.
FgAbGroup h1_crossed(const GModule& m);

// H^s of the cyclic group of order n generated by an element acting by `action`.
FgAbGroup cyclic_h(const IntMatrix& action, std::size_t n, const std::vector<Int>& orders, int s);
// Same, for the cyclic subgroup generated by an element of the module's group.
FgAbGroup cyclic_h(const GModule& m, std::size_t element, int s);

// Normalized bar complex, degrees 0..s_max. Throws BudgetExceeded when
// |G|^(s_max+1) * rank(M) exceeds the budget.
std::vector<FgAbGroup> bar_h(const GModule& m, int s_max, double budget = kDefaultBarBudget);

// dim H^s(G, F_p) from the normalized bar complex over F_p.
std::vector<std::size_t> modp_bar_dims(const FiniteGroup& g, long p, int s_max, double budget = kDefaultBarBudget);

// dim H^s(G, F_p) from a free F_p[G]-resolution built degree by degree.
std::vector<std::size_t> modp_resolution_dims(const FiniteGroup& g, long p, int s_max);

struct LhsResult {
  int window = 0;
  std::size_t normal_order = 0;
  std::vector<FgAbGroup> rows;             // H^q(N, M), q = 0..window+1
  std::vector<std::string> row_action;     // "trivial", "sgn" or "nontrivial"
  std::vector<std::vector<FgAbGroup>> e2;  // e2[p][q], p + q <= window + 1
  bool collapses = false;
  std::vector<std::string> certificate;    // one line per checked differential target
  std::vector<FgAbGroup> total;            // H^s for s = 0..window, valid when resolved[s]
  std::vector<bool> resolved;

  const FgAbGroup& at(int p, int q) const { return e2[p][q]; }
};

// E2 page of the extension N -> G -> G/N with N cyclic, generated by normal_generators.
// Throws NotNormal, NotCyclic.
LhsResult lhs_assemble(const GModule& m, const std::vector<std::size_t>& normal_generators, int window);

// Q = G/N with generators the images of G's generators; coset_of[g] is the index of gN.
struct Quotient {
  std::shared_ptr<FiniteGroup> group;
  std::vector<std::size_t> coset_of;
  std::vector<std::size_t> normal;  // elements of N
};
Quotient quotient_group(const FiniteGroup& g, const std::vector<std::size_t>& normal_generators);

}  // namespace picdesc::groupcoh
