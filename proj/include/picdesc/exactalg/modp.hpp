#pragma once

#include <cstdint>
#include <vector>

#include "picdesc/exactalg/matrix.hpp"

namespace picdesc::exactalg {

bool is_prime(long p);

// Rank of m reduced mod p. Throws NotPrime.
std::size_t modp_rank(const IntMatrix& m, long p);

// Dense matrix over F_p, p < 2^16.
class ModpMatrix {
 public:
  ModpMatrix() = default;
  ModpMatrix(std::size_t r, std::size_t c, std::uint32_t p) : r_(r), c_(c), p_(p), a_(r * c, 0) {}
  static ModpMatrix from_int(const IntMatrix& m, std::uint32_t p);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  std::uint32_t prime() const { return p_; }
  std::uint32_t& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::size_t rank() const;
  // Columns span the kernel.
  ModpMatrix kernel() const;
  ModpMatrix operator*(const ModpMatrix& o) const;
  ModpMatrix transpose() const;
  std::vector<std::uint32_t> column(std::size_t j) const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> a_;
};

// Incremental row-echelon basis over F_p: insert vectors, test membership.
class ModpEchelon {
 public:
  ModpEchelon(std::size_t dim, std::uint32_t p) : dim_(dim), p_(p) {}
  // Reduces v against the basis; returns true (and stores it) when independent.
  bool insert(std::vector<std::uint32_t> v);
  bool contains(std::vector<std::uint32_t> v) const;
  std::size_t size() const { return rows_.size(); }

 private:
  void reduce(std::vector<std::uint32_t>& v) const;
  std::size_t dim_;
  std::uint32_t p_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> lead_;
};

// Sparse rank over F_p by Markowitz-ordered elimination.
struct SparseModpMatrix {
  std::size_t ncols = 0;
  std::uint32_t p = 2;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> rows;
  void add(std::size_t r, std::size_t c, long long v);
  std::size_t rank() const;
};

std::uint32_t modp_inverse(std::uint32_t a, std::uint32_t p);

}  // namespace picdesc::exactalg
