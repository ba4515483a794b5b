#pragma once

#include <vector>

#include "picdesc/exactalg/matrix.hpp"

namespace picdesc::exactalg {

// u * m * v == d, u and v unimodular, d diagonal with d_1 | d_2 | ... and zeros last.
struct SmithForm {
  IntMatrix d, u, v;
  std::size_t rank = 0;
  std::vector<Int> diagonal() const;
};

SmithForm snf(const IntMatrix& m);

// Diagonal of the Smith form without transforms (units included, zeros omitted).
std::vector<Int> elementary_divisors(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

// Columns form a basis of the (saturated) integer kernel.
IntMatrix kernel_basis(const IntMatrix& m);

// Inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace picdesc::exactalg
