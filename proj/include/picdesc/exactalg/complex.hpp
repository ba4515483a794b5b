#pragma once

#include <vector>

#include "picdesc/exactalg/group.hpp"
#include "picdesc/exactalg/sparse.hpp"

namespace picdesc::exactalg {

// Cochain complex of diagonally presented groups. Level k has orders[k]
// (0 = ℤ summand); d[k] maps level k to level k+1. A missing d[k] is zero.
struct CochainComplex {
  int first_degree = 0;
  std::vector<std::vector<Int>> orders;
  std::vector<IntMatrix> d;

  std::size_t levels() const { return orders.size(); }
  std::size_t dim(std::size_t k) const { return orders[k].size(); }
  // Checks shapes, well-definedness on relations and d∘d = 0.
  void validate() const;
  // Cohomology at the level carrying the given degree, with coordinate maps.
  FgAbGroup cohomology(int degree) const;
};

// Sparse variant for large complexes; cohomology is computed without coordinates.
struct SparseCochainComplex {
  std::vector<std::vector<long long>> orders;
  std::vector<SparseIntMatrix> d;

  std::size_t levels() const { return orders.size(); }
  FgAbGroup cohomology(std::size_t level) const;
};

}  // namespace picdesc::exactalg
