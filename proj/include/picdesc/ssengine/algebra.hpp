#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "picdesc/exactalg/matrix.hpp"

namespace picdesc::ssengine {

using exactalg::Int;

struct Bidegree {
  int s = 0, t = 0;
  int stem() const { return t - s; }
  Bidegree operator+(const Bidegree& o) const { return {s + o.s, t + o.t}; }
  Bidegree operator-(const Bidegree& o) const { return {s - o.s, t - o.t}; }
  auto operator<=>(const Bidegree&) const = default;
};

// d_r moves (s, t) -> (s + r, t + r - 1).
inline Bidegree dr_offset(int r) { return {r, r - 1}; }

struct Window {
  int s_max = 0;
  int stem_min = 0, stem_max = 0;
  bool contains(const Bidegree& b) const {
    return b.s >= 0 && b.s <= s_max && b.stem() >= stem_min && b.stem() <= stem_max;
  }
};

struct Generator {
  std::string name;
  int s = 0, t = 0;
  bool invertible = false;
  // truncated polynomial coefficient (j, q): exponents in [0, D], or [-D, D] when laurent
  bool coefficient = false;
  bool laurent = false;
  int lo = 0, hi = 0;  // enumeration range for s = 0 generators
};

using Monomial = std::vector<int>;
using Poly = std::map<Monomial, Int>;

struct Rewrite {
  Monomial lhs;
  Poly rhs;
};

// Monomials divisible by the pattern have additive order dividing `order`.
struct OrderRule {
  Monomial pattern;
  Int order;
};

// Graded-commutative monomial algebra given by generators, rewriting rules and order rules.
// Signs use the parity of the stem t - s.
class Algebra {
 public:
  std::vector<Generator> gens;
  std::vector<Rewrite> rewrites;
  std::vector<OrderRule> order_rules;
  Int base_order = 0;
  int truncation = 24;

  std::size_t size() const { return gens.size(); }
  std::size_t index(const std::string& name) const;
  Monomial one() const { return Monomial(gens.size(), 0); }
  Monomial unit(std::size_t g, int e = 1) const;

  Bidegree degree(const Monomial& m) const;
  Int order(const Monomial& m) const;
  bool is_normal(const Monomial& m) const;

  // sign of x * y relative to the canonical (sorted) product
  int swap_sign(const Monomial& x, const Monomial& y) const;

  Poly normalize(const Poly& p, bool last_rule_first = false) const;
  Poly mul(const Poly& x, const Poly& y) const;
  Poly mono(const Monomial& m, const Int& c = 1) const { return normalize(Poly{{m, c}}); }

  std::string label(const Monomial& m) const;
  // e.g. "-a b^5 Δ^-2", "jΔ - 1728Δ", "c4 h1^3", "0"
  Poly parse(const std::string& text) const;
  Monomial parse_monomial(const std::string& text) const;
  std::string format(const Poly& p) const;

  // Normal monomials with bidegree in the window.
  std::vector<Monomial> enumerate(const Window& w) const;
  // Every exponent vector in the enumeration box with s <= s_max (normal or not).
  std::vector<Monomial> box(int s_max) const;
  bool in_box(const Monomial& m, int s_max) const;

  // Critical pairs of the rewriting rules, then two normalization strategies over the box.
  // Throws NonConfluentRelations.
  void check_confluence(const Window& w) const;

 private:
  bool divides(const Monomial& d, const Monomial& m) const;
  bool in_range(const Monomial& m) const;
  Poly reduce_coefficients(Poly p) const;
  Poly rewrite_once(const Poly& p, bool last_rule_first, bool& changed) const;
};

}  // namespace picdesc::ssengine
