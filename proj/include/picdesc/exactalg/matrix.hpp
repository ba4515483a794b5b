#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace picdesc::exactalg {

using Int = mpz_class;

// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const;
  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const;

  std::vector<Int> apply(const std::vector<Int>& x) const;
  std::vector<Int> column(std::size_t j) const;
  std::vector<Int> row(std::size_t i) const;

  // Submatrix of the listed columns / rows, in order.
  IntMatrix select_cols(const std::vector<std::size_t>& js) const;
  IntMatrix select_rows(const std::vector<std::size_t>& is) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const Int& k);
  void add_col(std::size_t i, std::size_t j, const Int& k);
  void negate_row(std::size_t i);

  std::string str() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Int> a_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

// Reduce entries of row i modulo orders[i] (0 = no reduction).
void reduce_rows(IntMatrix& m, const std::vector<Int>& orders);
void reduce_vector(std::vector<Int>& v, const std::vector<Int>& orders);
bool zero_mod(const std::vector<Int>& v, const std::vector<Int>& orders);

}  // namespace picdesc::exactalg
