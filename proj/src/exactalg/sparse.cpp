#include "picdesc/exactalg/sparse.hpp"

#include <algorithm>
#include <queue>

#include "picdesc/errors.hpp"
#include "picdesc/exactalg/smith.hpp"

namespace picdesc::exactalg {

void SparseIntMatrix::add(std::size_t r, std::size_t c, long long v) {
  if (v != 0) rows[r].push_back({static_cast<std::uint32_t>(c), v});
}

void SparseIntMatrix::normalize() {
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    std::vector<SparseEntry> out;
    for (const auto& e : row) {
      if (!out.empty() && out.back().col == e.col)
        out.back().val += e.val;
      else
        out.push_back(e);
      if (out.back().val == 0) out.pop_back();
    }
    row.swap(out);
  }
}

IntMatrix SparseIntMatrix::dense() const {
  IntMatrix d(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& e : rows[i]) d(i, e.col) += static_cast<long>(e.val);
  return d;
}

SparseIntMatrix SparseIntMatrix::from_dense(const IntMatrix& m) {
  SparseIntMatrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) {
        if (!m(i, j).fits_slong_p()) throw DataError("entry too large for sparse storage");
        s.add(i, j, m(i, j).get_si());
      }
  return s;
}

namespace {

struct Overflow {};

// Scalar policies: checked 64-bit arithmetic, or GMP.
struct I64 {
  using T = long long;
  static T from(long long v) { return v; }
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static bool zero(T a) { return a == 0; }
  static bool unit(T a) { return a == 1 || a == -1; }
  static T absval(T a) { return a < 0 ? -a : a; }
  static bool divides(T a, T b) { return b % a == 0; }
  static T quot(T b, T a) { return b / a; }
  static Int big(T a) { return Int(static_cast<long>(a)); }
};

struct Big {
  using T = Int;
  static T from(long long v) { return Int(static_cast<long>(v)); }
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static bool zero(const T& a) { return sgn(a) == 0; }
  static bool unit(const T& a) { return a == 1 || a == -1; }
  static T absval(const T& a) { return abs(a); }
  static bool divides(const T& a, const T& b) { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; }
  static T quot(const T& b, const T& a) { return b / a; }
  static Int big(const T& a) { return a; }
};

template <class P>
struct Eliminator {
  using T = typename P::T;
  struct E {
    std::uint32_t col;
    T val;
  };
  std::size_t ncols;
  std::vector<std::vector<E>> rows;
  std::vector<std::vector<std::uint32_t>> colrows;
  std::vector<char> row_alive, col_alive;
  std::vector<Int> pivots;

  explicit Eliminator(const SparseIntMatrix& m) : ncols(m.ncols), rows(m.rows.size()), colrows(m.ncols) {
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
      for (const auto& e : m.rows[i]) {
        rows[i].push_back({e.col, P::from(e.val)});
        colrows[e.col].push_back(static_cast<std::uint32_t>(i));
      }
    }
    row_alive.assign(rows.size(), 1);
    col_alive.assign(ncols, 1);
  }

  const T* find(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const E& e, std::uint32_t x) { return e.col < x; });
    if (it != row.end() && it->col == c) return &it->val;
    return nullptr;
  }

  std::vector<std::uint32_t> stamp;
  std::uint32_t cur_stamp = 0;

  // Drops dead, stale and duplicate row references of column c.
  std::size_t live_colcount(std::uint32_t c) {
    if (stamp.size() != rows.size()) stamp.assign(rows.size(), 0);
    ++cur_stamp;
    auto& v = colrows[c];
    std::size_t k = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::uint32_t r = v[i];
      if (row_alive[r] && stamp[r] != cur_stamp && find(r, c)) {
        stamp[r] = cur_stamp;
        v[k++] = r;
      }
    }
    v.resize(k);
    return k;
  }

  // row_i -= k * row_p
  void axpy(std::uint32_t i, const T& k, std::uint32_t p) {
    const auto& a = rows[i];
    const auto& b = rows[p];
    std::vector<E> out;
    out.reserve(a.size() + b.size());
    std::size_t x = 0, y = 0;
    while (x < a.size() || y < b.size()) {
      if (y == b.size() || (x < a.size() && a[x].col < b[y].col)) {
        out.push_back(a[x++]);
      } else if (x == a.size() || b[y].col < a[x].col) {
        T v = P::sub(T(0), P::mul(k, b[y].val));
        colrows[b[y].col].push_back(i);
        out.push_back({b[y].col, v});
        ++y;
      } else {
        T v = P::sub(a[x].val, P::mul(k, b[y].val));
        if (!P::zero(v)) out.push_back({a[x].col, v});
        ++x;
        ++y;
      }
    }
    rows[i].swap(out);
  }

  // Pivot on (p, c): requires the pivot to divide every entry of its column.
  void pivot(std::uint32_t p, std::uint32_t c) {
    T pv = *find(p, c);
    live_colcount(c);
    std::vector<std::uint32_t> others = colrows[c];
    for (std::uint32_t i : others) {
      if (i == p) continue;
      const T* v = find(i, c);
      if (!v) continue;
      T k = P::quot(*v, pv);
      axpy(i, k, p);
    }
    pivots.push_back(P::big(P::absval(pv)));
    row_alive[p] = 0;
    col_alive[c] = 0;
    // pv divides the rest of the pivot row, so column operations clear it
    rows[p].clear();
  }

  bool row_pivot_ok(std::uint32_t r, const E& e) {
    for (const auto& f : rows[r])
      if (!P::divides(e.val, f.val)) return false;
    for (std::uint32_t i : colrows[e.col]) {
      if (!row_alive[i]) continue;
      const T* v = find(i, e.col);
      if (v && !P::divides(e.val, *v)) return false;
    }
    return true;
  }

  void run_units() {
    using Item = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (std::uint32_t i = 0; i < rows.size(); ++i)
      if (!rows[i].empty()) heap.push({rows[i].size(), i});
    while (!heap.empty()) {
      auto [len, r] = heap.top();
      heap.pop();
      if (!row_alive[r] || rows[r].empty()) continue;
      if (len != rows[r].size()) {
        heap.push({rows[r].size(), r});
        continue;
      }
      std::uint32_t best = UINT32_MAX;
      std::size_t bestc = SIZE_MAX;
      for (const auto& e : rows[r]) {
        if (!P::unit(e.val)) continue;
        std::size_t cc = colrows[e.col].size();  // upper bound, cleaned at pivot time
        if (cc < bestc) bestc = cc, best = e.col;
      }
      if (best == UINT32_MAX) continue;
      std::vector<std::uint32_t> touched = colrows[best];
      pivot(r, best);
      for (std::uint32_t i : touched)
        if (row_alive[i] && !rows[i].empty()) heap.push({rows[i].size(), i});
    }
  }

  void run_divisors() {
    for (;;) {
      bool progress = false;
      for (std::uint32_t r = 0; r < rows.size(); ++r) {
        if (!row_alive[r] || rows[r].empty()) continue;
        // smallest-magnitude entry first
        const E* cand = nullptr;
        for (const auto& e : rows[r])
          if (!cand || P::absval(e.val) < P::absval(cand->val)) cand = &e;
        live_colcount(cand->col);
        if (row_pivot_ok(r, *cand)) {
          pivot(r, cand->col);
          progress = true;
        }
      }
      if (!progress) break;
    }
  }

  SparseSmith finish() {
    std::vector<std::uint32_t> live_rows, live_cols;
    std::vector<std::size_t> colmap(ncols, SIZE_MAX);
    for (std::uint32_t r = 0; r < rows.size(); ++r)
      if (row_alive[r] && !rows[r].empty()) {
        live_rows.push_back(r);
        for (const auto& e : rows[r])
          if (colmap[e.col] == SIZE_MAX) {
            colmap[e.col] = live_cols.size();
            live_cols.push_back(e.col);
          }
      }
    std::vector<Int> all = pivots;
    if (!live_rows.empty()) {
      IntMatrix d(live_rows.size(), live_cols.size());
      for (std::size_t k = 0; k < live_rows.size(); ++k)
        for (const auto& e : rows[live_rows[k]]) d(k, colmap[e.col]) = P::big(e.val);
      for (auto& x : elementary_divisors(d)) all.push_back(x);
    }
    SparseSmith out;
    out.rank = all.size();
    FgAbGroup g = FgAbGroup::from_factors(all);
    out.torsion = g.torsion();
    return out;
  }
};

template <class P>
SparseSmith eliminate(const SparseIntMatrix& m) {
  Eliminator<P> e(m);
  e.run_units();
  e.run_divisors();
  return e.finish();
}

}  // namespace

SparseSmith sparse_smith(SparseIntMatrix m) {
  m.normalize();
  try {
    return eliminate<I64>(m);
  } catch (const Overflow&) {
    return eliminate<Big>(m);
  }
}

FgAbGroup free_complex_cohomology(const SparseIntMatrix& in, const SparseIntMatrix& out, std::size_t n) {
  if (in.nrows() != n || out.ncols != n) throw DimensionMismatch("neighbouring differentials do not meet at rank " +
                                                                 std::to_string(n));
  SparseSmith a = sparse_smith(in);
  SparseSmith b = sparse_smith(out);
  if (a.rank + b.rank > n) throw NotAComplex("ranks exceed the level dimension");
  std::vector<Int> f = a.torsion;
  for (std::size_t i = 0; i < n - a.rank - b.rank; ++i) f.push_back(0);
  return FgAbGroup::from_factors(f);
}

}  // namespace picdesc::exactalg
