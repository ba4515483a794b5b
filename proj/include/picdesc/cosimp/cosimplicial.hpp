#pragma once

#include <string>
#include <vector>

#include "picdesc/exactalg/group.hpp"
#include "picdesc/exactalg/sparse.hpp"

namespace picdesc::cosimp {

using exactalg::FgAbGroup;
using exactalg::Int;
using exactalg::SparseIntMatrix;

// Truncated cosimplicial abelian group, levels 0..top(). Level n is ⊕ ℤ/orders[n][i]
// (0 = ℤ). coface[n][i] maps level n-1 to level n (n >= 1, 0 <= i <= n);
// codegeneracy[n][j] maps level n+1 to level n (0 <= j <= n). Matrices act on columns.
struct CosimplicialAbGroup {
  std::string name;
  std::vector<std::vector<Int>> orders;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::vector<SparseIntMatrix>> coface;
  std::vector<std::vector<SparseIntMatrix>> codegeneracy;

  std::size_t top() const { return orders.size() - 1; }
  std::size_t dim(std::size_t n) const { return orders[n].size(); }
  bool is_free() const;
  // Checks every cosimplicial identity on all levels; throws IdentityViolated.
  void validate() const;
  // Σ (-1)^i d^i : level n -> level n+1
  SparseIntMatrix alternating(std::size_t n) const;
};

// Constant cosimplicial ℤ^rank on levels 0..N.
CosimplicialAbGroup constant(std::size_t rank, std::size_t N);

// Level n: reduced d-cycles of the normalized chains of Δ^n, basis z_U = ∂({0} ∪ U) for
// U ⊂ {1..n}, |U| = d+1. Throws TruncationTooSmall when N < d + 2.
CosimplicialAbGroup cycles_cosimplicial(int d, std::size_t N);
// The models for t-cycles and (2t+1)-cycles; default truncation 2t+4.
CosimplicialAbGroup universal_A(int t, std::size_t N = 0);
CosimplicialAbGroup universal_B(int t, std::size_t N = 0);

// Cohomology of the cochain complex of c in degrees 0..S. Throws WindowExceedsTruncation if S > top()-1.
std::vector<FgAbGroup> moore_cohomology(const CosimplicialAbGroup& c, std::size_t S);
// Same, from the normalized subcomplex ∩ ker s^j (dense; small levels only).
std::vector<FgAbGroup> normalized_cohomology(const CosimplicialAbGroup& c, std::size_t S);
// dim H^s(c ⊗ F_p), s = 0..S.
std::vector<std::size_t> modp_moore_dims(const CosimplicialAbGroup& c, long p, std::size_t S);

// Cocycle at level s generating H^s when H^s ≅ ℤ (the class ι for A•); throws HypothesisFailed otherwise.
std::vector<Int> fundamental_cocycle(const CosimplicialAbGroup& c, std::size_t s);

// Levelwise (A ⊗ A)_{C2}, or the sign-twisted variant whose diagonal classes have order 2.
// Throws NotFree.
CosimplicialAbGroup sym2(const CosimplicialAbGroup& c, bool twisted);
// Index of the basis class e_i e_j (i <= j) of Sym2 at any level.
std::size_t sym2_index(std::size_t i, std::size_t j);

// Alexander-Whitney square of a level-p cochain of c, as a level-2p cochain of sym2(c, twisted).
std::vector<Int> cup_square(const CosimplicialAbGroup& c, const std::vector<Int>& x, std::size_t p, bool twisted);

// True when x mod p is not in the image of the level s-1 -> s differential mod p,
// which certifies that x is not a coboundary.
bool nonzero_mod_p(const CosimplicialAbGroup& c, std::size_t s, const std::vector<Int>& x, long p);

// dim H^i(Sym^2(c ⊗ F_2)), i = 0..S, after checking that H^*(c ⊗ F_2) is at most F_2
// in degree t+1 and zero elsewhere in the window (HypothesisFailed otherwise).
std::vector<std::size_t> priddy_dims(const CosimplicialAbGroup& c, int t, std::size_t S);

// Levelwise direct sum.
CosimplicialAbGroup direct_sum(const CosimplicialAbGroup& a, const CosimplicialAbGroup& b);

SparseIntMatrix compose(const SparseIntMatrix& a, const SparseIntMatrix& b);

}  // namespace picdesc::cosimp
