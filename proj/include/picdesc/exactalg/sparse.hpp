#pragma once

#include <cstdint>
#include <vector>

#include "picdesc/exactalg/group.hpp"
#include "picdesc/exactalg/matrix.hpp"

namespace picdesc::exactalg {

struct SparseEntry {
  std::uint32_t col;
  long long val;
};

// Row-major sparse integer matrix; rows need not be sorted on input.
struct SparseIntMatrix {
  std::size_t ncols = 0;
  std::vector<std::vector<SparseEntry>> rows;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t nrows, std::size_t nc) : ncols(nc), rows(nrows) {}
  std::size_t nrows() const { return rows.size(); }
  void add(std::size_t r, std::size_t c, long long v);
  void normalize();  // sort, merge duplicates, drop zeros
  IntMatrix dense() const;
  static SparseIntMatrix from_dense(const IntMatrix& m);
};

struct SparseSmith {
  std::size_t rank = 0;
  // Non-unit invariant factors of the cokernel torsion, normalized.
  std::vector<Int> torsion;
};

// Invariant factors by unit/divisor pivoting, dense Smith form on what is left.
SparseSmith sparse_smith(SparseIntMatrix m);

// Cohomology of a free cochain complex at a level from its two neighbouring differentials:
// ℤ^(n - rank out - rank in) ⊕ torsion(in).
FgAbGroup free_complex_cohomology(const SparseIntMatrix& in, const SparseIntMatrix& out, std::size_t n);

}  // namespace picdesc::exactalg
