#include "picdesc/exactalg/matrix.hpp"

#include <sstream>

#include "picdesc/errors.hpp"

namespace picdesc::exactalg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.resize(r_ * c_);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c_) throw DimensionMismatch("ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) (*this)(i, j++) = v;
    ++i;
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("ragged row list");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (sgn(x) != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (c_ != o.r_) throw DimensionMismatch("product of " + std::to_string(r_) + "x" + std::to_string(c_) +
                                          " and " + std::to_string(o.r_) + "x" + std::to_string(o.c_));
  IntMatrix p(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Int& x = (*this)(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < o.c_; ++j) {
        const Int& y = o(k, j);
        if (sgn(y) != 0) p(i, j) += x * y;
      }
    }
  return p;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("sum of unequal shapes");
  IntMatrix s = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) s.a_[k] += o.a_[k];
  return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("difference of unequal shapes");
  IntMatrix s = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) s.a_[k] -= o.a_[k];
  return s;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
  if (x.size() != c_) throw DimensionMismatch("vector length " + std::to_string(x.size()) +
                                              " vs " + std::to_string(c_) + " columns");
  std::vector<Int> y(r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (sgn(x[j]) != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

std::vector<Int> IntMatrix::column(std::size_t j) const {
  std::vector<Int> v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
  return std::vector<Int>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& js) const {
  IntMatrix m(r_, js.size());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < js.size(); ++k) m(i, k) = (*this)(i, js[k]);
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& is) const {
  IntMatrix m(is.size(), c_);
  for (std::size_t k = 0; k < is.size(); ++k)
    for (std::size_t j = 0; j < c_; ++j) m(k, j) = (*this)(is[k], j);
  return m;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& k) {
  if (sgn(k) == 0) return;
  for (std::size_t c = 0; c < c_; ++c)
    if (sgn((*this)(j, c)) != 0) (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& k) {
  if (sgn(k) == 0) return;
  for (std::size_t r = 0; r < r_; ++r)
    if (sgn((*this)(r, j)) != 0) (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < c_; ++c) (*this)(i, c) = -(*this)(i, c);
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < c_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack row counts differ");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack column counts differ");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

static void reduce(Int& x, const Int& m) {
  if (sgn(m) == 0) return;
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
}

void reduce_rows(IntMatrix& m, const std::vector<Int>& orders) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (sgn(orders[i]) != 0)
      for (std::size_t j = 0; j < m.cols(); ++j) reduce(m(i, j), orders[i]);
}

void reduce_vector(std::vector<Int>& v, const std::vector<Int>& orders) {
  for (std::size_t i = 0; i < v.size(); ++i) reduce(v[i], orders[i]);
}

bool zero_mod(const std::vector<Int>& v, const std::vector<Int>& orders) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int x = v[i];
    reduce(x, orders[i]);
    if (sgn(x) != 0) return false;
  }
  return true;
}

}  // namespace picdesc::exactalg
