#include "picdesc/exactalg/smith.hpp"

#include "picdesc/errors.hpp"

namespace picdesc::exactalg {

namespace {

// Nearest-integer quotient keeps entries small during reduction.
Int round_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int r2 = 2 * r;
  if (abs(r2) > abs(b)) q += 1;
  return q;
}

struct Reducer {
  IntMatrix a, u, v;
  bool track;

  Reducer(const IntMatrix& m, bool t) : a(m), track(t) {
    if (track) {
      u = IntMatrix::identity(m.rows());
      v = IntMatrix::identity(m.cols());
    }
  }

  void row_add(std::size_t i, std::size_t j, const Int& k) {
    a.add_row(i, j, k);
    if (track) u.add_row(i, j, k);
  }
  void col_add(std::size_t i, std::size_t j, const Int& k) {
    a.add_col(i, j, k);
    if (track) v.add_col(i, j, k);
  }
  void row_swap(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (track) u.swap_rows(i, j);
  }
  void col_swap(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (track) v.swap_cols(i, j);
  }

  bool pick_pivot(std::size_t t) {
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t bi = R, bj = C;
    Int best;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j) {
        const Int& x = a(i, j);
        if (sgn(x) == 0) continue;
        if (bi == R || abs(x) < best) {
          best = abs(x);
          bi = i;
          bj = j;
          if (best == 1) goto found;
        }
      }
    if (bi == R) return false;
  found:
    row_swap(t, bi);
    col_swap(t, bj);
    return true;
  }

  // Move the smallest nonzero entry of row t / column t onto the diagonal.
  void repivot_line(std::size_t t) {
    std::size_t bi = t, bj = t;
    Int best = abs(a(t, t));
    for (std::size_t i = t + 1; i < a.rows(); ++i)
      if (sgn(a(i, t)) != 0 && abs(a(i, t)) < best) best = abs(a(i, t)), bi = i, bj = t;
    for (std::size_t j = t + 1; j < a.cols(); ++j)
      if (sgn(a(t, j)) != 0 && abs(a(t, j)) < best) best = abs(a(t, j)), bi = t, bj = j;
    row_swap(t, bi);
    col_swap(t, bj);
  }

  std::size_t run() {
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t t = 0;
    for (; t < std::min(R, C); ++t) {
      if (!pick_pivot(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < R; ++i) {
          if (sgn(a(i, t)) == 0) continue;
          row_add(i, t, -round_div(a(i, t), a(t, t)));
          if (sgn(a(i, t)) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < C; ++j) {
          if (sgn(a(t, j)) == 0) continue;
          col_add(j, t, -round_div(a(t, j), a(t, t)));
          if (sgn(a(t, j)) != 0) clean = false;
        }
        if (!clean) {
          repivot_line(t);
          continue;
        }
        // divisibility of the remaining block
        bool divides = true;
        for (std::size_t i = t + 1; i < R && divides; ++i)
          for (std::size_t j = t + 1; j < C; ++j)
            if (sgn(a(i, j)) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
              row_add(t, i, 1);
              divides = false;
              break;
            }
        if (divides) break;
      }
      if (sgn(a(t, t)) < 0) {
        a.negate_row(t);
        if (track) u.negate_row(t);
      }
    }
    return t;
  }
};

}  // namespace

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithForm snf(const IntMatrix& m) {
  Reducer r(m, true);
  SmithForm s;
  s.rank = r.run();
  s.d = std::move(r.a);
  s.u = std::move(r.u);
  s.v = std::move(r.v);
  return s;
}

std::vector<Int> elementary_divisors(const IntMatrix& m) {
  Reducer r(m, false);
  std::size_t k = r.run();
  std::vector<Int> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(r.a(i, i));
  return out;
}

std::size_t rank(const IntMatrix& m) { return elementary_divisors(m).size(); }

IntMatrix kernel_basis(const IntMatrix& m) {
  if (m.rows() == 0) return IntMatrix::identity(m.cols());
  SmithForm s = snf(m);
  std::vector<std::size_t> js;
  for (std::size_t j = s.rank; j < m.cols(); ++j) js.push_back(j);
  return s.v.select_cols(js);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  SmithForm s = snf(m);
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (s.d(i, i) != 1) throw DimensionMismatch("matrix is not unimodular");
  // u m v = 1  =>  m^{-1} = v u
  return s.v * s.u;
}

}  // namespace picdesc::exactalg
