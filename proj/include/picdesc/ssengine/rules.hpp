#pragma once

#include <map>
#include <string>
#include <vector>

#include "picdesc/ssengine/chart.hpp"

namespace picdesc::ssengine {

struct MonomialSeed {
  Monomial source;
  Poly target;
};

struct LeibnizResult {
  int r = 2;
  std::map<Monomial, Poly> d;           // every monomial reached, in normal form
  std::vector<DifferentialRule> rules;  // nonzero values on window basis classes
};

// Smallest Leibniz-closed extension of the seeds: d(xy) = d(x)y + (-1)^{stem x} x d(y).
// Permanent generators and the unit have d = 0. Monomials outside the chart's enumeration
// box are not visited. Throws RuleNotClosed on inconsistent values, UnresolvableProduct when
// a value on a window class has no basis expression.
LeibnizResult leibniz_close(const E2Chart& chart, int r, const std::vector<MonomialSeed>& seeds,
                            const std::vector<std::size_t>& permanent);

struct Rejection {
  DifferentialRule rule;
  std::string reason;
};

struct ImportResult {
  std::vector<DifferentialRule> imported;
  std::vector<Rejection> rejected;
};

// A ring rule at (s, t') becomes a pic rule at (s, t'+1) when 2 <= r <= t-1, or when the pic
// source has t-s > 0 and s > 0 (t = t'+1).
ImportResult import_comparison(const std::vector<DifferentialRule>& ring_rules, const E2Chart& pic);

struct CoefficientMaps {
  IntMatrix ring_d;  // d_{t+1} on the ring spot, E2 coordinates
  IntMatrix square;  // x -> x^2, E2 coordinates
};

// Reads ring_d off the ring rules of index r = t+1 and squares basis classes in the algebra
// (or through the listed products for explicit classes).
CoefficientMaps coefficient_maps(const E2Chart& ring, const std::vector<DifferentialRule>& ring_rules,
                                 const Bidegree& ring_spot);

struct UnstableResult {
  std::vector<DifferentialRule> rules;
  IntMatrix op;       // on page generators
  FgAbGroup kernel;   // of op on the page
  FgAbGroup image;
};

// First differential outside the stable range at pic spot (t+1, t+1), page r = t+1:
// f -> ring_d(f) + square(f). Throws NotCharTwo unless source and target are 2-torsion.
UnstableResult unstable_first_differential(const ChartPage& pic, const Bidegree& ring_spot, const IntMatrix& ring_d,
                                           const IntMatrix& square);

}  // namespace picdesc::ssengine
