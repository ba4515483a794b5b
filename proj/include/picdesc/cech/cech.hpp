#pragma once

#include <map>
#include <string>
#include <vector>

#include "picdesc/exactalg/group.hpp"

namespace picdesc::cech {

using exactalg::FgAbGroup;

// ℤ[a_1..a_n] graded by positive degrees; the module is ⊕ R(shift). The cover is
// {a_i ≠ 0}, so every Čech term is a monomial localization.
struct GradedCechProblem {
  std::vector<int> degrees;       // one per variable, n >= 2
  std::vector<int> shifts{0};     // module summands R(shift)
  int lo = 0, hi = 0;             // internal degree window, inclusive
  std::vector<std::string> names; // optional variable names
};

struct CechResult {
  std::size_t n = 0;
  // degree -> H^0..H^{n-1}; H^0 and H^{n-1} carry monomial labels
  std::map<int, std::vector<FgAbGroup>> h;
};

// Per internal degree, the cohomology of the Čech complex, computed by splitting
// into ℤ^n-multidegrees. Throws WindowUnbounded when a nonzero multidegree class
// appears with infinite multiplicity, HypothesisFailed if a middle group is nonzero.
CechResult cech_graded(const GradedCechProblem& p);

// Cohomology of the Čech complex of one multidegree whose negative exponents lie
// exactly at `negative` (a subset of 0..n-1); degrees 0..n-1.
std::vector<FgAbGroup> pattern_cohomology(std::size_t n, const std::vector<std::size_t>& negative);

// Number of ring monomials of the given degree (the H^0 oracle).
std::size_t ring_piece_rank(const std::vector<int>& degrees, int degree);

}  // namespace picdesc::cech
