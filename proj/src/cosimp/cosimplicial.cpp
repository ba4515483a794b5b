#include "picdesc/cosimp/cosimplicial.hpp"

#include <algorithm>
#include <map>

#include "picdesc/errors.hpp"
#include "picdesc/exactalg/complex.hpp"
#include "picdesc/exactalg/modp.hpp"
#include "picdesc/exactalg/smith.hpp"

namespace picdesc::cosimp {

using exactalg::IntMatrix;

namespace {

using Subset = std::vector<int>;

std::vector<Subset> subsets_of(int lo, int hi, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > hi - lo + 1) return out;
  Subset cur(k);
  for (int i = 0; i < k; ++i) cur[i] = lo + i;
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == hi - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::string subset_label(const Subset& s) {
  std::string r = "z";
  for (int v : s) r += (r.size() > 1 ? "," : "") + std::to_string(v);
  return r;
}

// Monotone maps [m] -> [n]
std::vector<int> coface_map(int n, int i) {  // δ^i: [n-1] -> [n], skips i
  std::vector<int> f;
  for (int k = 0; k < n; ++k) f.push_back(k < i ? k : k + 1);
  return f;
}
std::vector<int> codegeneracy_map(int n, int j) {  // σ^j: [n+1] -> [n], hits j twice
  std::vector<int> f;
  for (int k = 0; k <= n + 1; ++k) f.push_back(k <= j ? k : k - 1);
  return f;
}

struct CycleLevels {
  int d;
  std::vector<std::vector<Subset>> basis;           // per level
  std::vector<std::map<Subset, std::size_t>> index;  // per level
};

// Matrix of φ on reduced d-cycles, level m -> level n.
SparseIntMatrix cycle_map(const CycleLevels& L, std::size_t m, std::size_t n, const std::vector<int>& phi) {
  SparseIntMatrix out(L.basis[n].size(), L.basis[m].size());
  for (std::size_t c = 0; c < L.basis[m].size(); ++c) {
    Subset full{0};
    full.insert(full.end(), L.basis[m][c].begin(), L.basis[m][c].end());
    // ∂(full) = Σ (-1)^k full minus its k-th vertex; keep faces avoiding 0 after φ
    for (std::size_t k = 0; k < full.size(); ++k) {
      Subset img;
      bool ok = true;
      for (std::size_t v = 0; v < full.size(); ++v) {
        if (v == k) continue;
        int x = phi[full[v]];
        if (!img.empty() && img.back() == x) {
          ok = false;
          break;
        }
        img.push_back(x);
      }
      if (!ok || img.front() == 0) continue;
      out.add(L.index[n].at(img), c, (k % 2 == 0) ? 1 : -1);
    }
  }
  out.normalize();
  return out;
}

bool equal_mod(const SparseIntMatrix& a, const SparseIntMatrix& b, const std::vector<Int>& orders) {
  if (a.nrows() != b.nrows() || a.ncols != b.ncols) return false;
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    std::map<std::uint32_t, long long> diff;
    for (const auto& e : a.rows[i]) diff[e.col] += e.val;
    for (const auto& e : b.rows[i]) diff[e.col] -= e.val;
    long long o = orders[i].get_si();
    for (const auto& [c, v] : diff)
      if (o == 0 ? v != 0 : v % o != 0) return false;
  }
  return true;
}

SparseIntMatrix identity(std::size_t n) {
  SparseIntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.add(i, i, 1);
  return m;
}

std::string where(std::size_t n, const char* what) { return std::string(what) + " at level " + std::to_string(n); }

exactalg::SparseCochainComplex sparse_complex(const CosimplicialAbGroup& c, std::size_t S) {
  exactalg::SparseCochainComplex cx;
  for (std::size_t n = 0; n <= S + 1; ++n) {
    std::vector<long long> o;
    for (const auto& x : c.orders[n]) o.push_back(x.get_si());
    cx.orders.push_back(std::move(o));
    if (n <= S) cx.d.push_back(c.alternating(n));
  }
  return cx;
}

}  // namespace

SparseIntMatrix compose(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.ncols != b.nrows()) throw DimensionMismatch("composition of incompatible maps");
  SparseIntMatrix out(a.nrows(), b.ncols);
  for (std::size_t i = 0; i < a.nrows(); ++i)
    for (const auto& e : a.rows[i])
      for (const auto& f : b.rows[e.col]) out.add(i, f.col, e.val * f.val);
  out.normalize();
  return out;
}

bool CosimplicialAbGroup::is_free() const {
  for (const auto& lv : orders)
    for (const auto& o : lv)
      if (sgn(o) != 0) return false;
  return true;
}

SparseIntMatrix CosimplicialAbGroup::alternating(std::size_t n) const {
  SparseIntMatrix out(dim(n + 1), dim(n));
  for (std::size_t i = 0; i <= n + 1; ++i)
    for (std::size_t r = 0; r < dim(n + 1); ++r)
      for (const auto& e : coface[n + 1][i].rows[r]) out.add(r, e.col, (i % 2 == 0) ? e.val : -e.val);
  out.normalize();
  return out;
}

void CosimplicialAbGroup::validate() const {
  const std::size_t N = top();
  if (coface.size() != N + 1 || codegeneracy.size() != N + 1) throw IdentityViolated("structure maps missing");
  for (std::size_t n = 1; n <= N; ++n) {
    if (coface[n].size() != n + 1) throw IdentityViolated(where(n, "wrong number of cofaces"));
    for (const auto& m : coface[n])
      if (m.nrows() != dim(n) || m.ncols != dim(n - 1)) throw IdentityViolated(where(n, "coface has wrong shape"));
  }
  for (std::size_t n = 0; n < N; ++n) {
    if (codegeneracy[n].size() != n + 1) throw IdentityViolated(where(n, "wrong number of codegeneracies"));
    for (const auto& m : codegeneracy[n])
      if (m.nrows() != dim(n) || m.ncols != dim(n + 1)) throw IdentityViolated(where(n, "codegeneracy has wrong shape"));
  }
  // d^j d^i = d^i d^{j-1}, i < j
  for (std::size_t n = 1; n + 1 <= N; ++n)
    for (std::size_t j = 1; j <= n + 1; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (!equal_mod(compose(coface[n + 1][j], coface[n][i]), compose(coface[n + 1][i], coface[n][j - 1]),
                       orders[n + 1]))
          throw IdentityViolated(where(n + 1, "d^j d^i != d^i d^(j-1)"));
  // s^j s^i = s^i s^{j+1}, i <= j
  for (std::size_t n = 0; n + 2 <= N; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        if (!equal_mod(compose(codegeneracy[n][j], codegeneracy[n + 1][i]),
                       compose(codegeneracy[n][i], codegeneracy[n + 1][j + 1]), orders[n]))
          throw IdentityViolated(where(n, "s^j s^i != s^i s^(j+1)"));
  // s^j d^i on level n
  for (std::size_t n = 0; n + 1 <= N; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t i = 0; i <= n + 1; ++i) {
        SparseIntMatrix lhs = compose(codegeneracy[n][j], coface[n + 1][i]);
        SparseIntMatrix rhs;
        if (i == j || i == j + 1)
          rhs = identity(dim(n));
        else if (i < j)
          rhs = compose(coface[n][i], codegeneracy[n - 1][j - 1]);
        else
          rhs = compose(coface[n][i - 1], codegeneracy[n - 1][j]);
        if (!equal_mod(lhs, rhs, orders[n])) throw IdentityViolated(where(n, "s^j d^i relation fails"));
      }
}

CosimplicialAbGroup constant(std::size_t rank, std::size_t N) {
  CosimplicialAbGroup c;
  c.name = "constant";
  c.orders.assign(N + 1, std::vector<Int>(rank, 0));
  c.labels.assign(N + 1, std::vector<std::string>(rank, "1"));
  c.coface.resize(N + 1);
  c.codegeneracy.resize(N + 1);
  for (std::size_t n = 1; n <= N; ++n) c.coface[n].assign(n + 1, identity(rank));
  for (std::size_t n = 0; n < N; ++n) c.codegeneracy[n].assign(n + 1, identity(rank));
  c.validate();
  return c;
}

CosimplicialAbGroup cycles_cosimplicial(int d, std::size_t N) {
  if (d < 0) throw DataError("chain degree must be nonnegative");
  if (N < static_cast<std::size_t>(d) + 2)
    throw TruncationTooSmall("need levels through " + std::to_string(d + 2) + " for " + std::to_string(d) +
                             "-cycles, got " + std::to_string(N));
  CycleLevels L;
  L.d = d;
  for (std::size_t n = 0; n <= N; ++n) {
    L.basis.push_back(subsets_of(1, static_cast<int>(n), d + 1));
    std::map<Subset, std::size_t> idx;
    for (std::size_t k = 0; k < L.basis[n].size(); ++k) idx[L.basis[n][k]] = k;
    L.index.push_back(std::move(idx));
  }
  CosimplicialAbGroup c;
  c.name = std::to_string(d) + "-cycles";
  c.coface.resize(N + 1);
  c.codegeneracy.resize(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    c.orders.emplace_back(L.basis[n].size(), 0);
    std::vector<std::string> lab;
    for (const auto& u : L.basis[n]) lab.push_back(subset_label(u));
    c.labels.push_back(std::move(lab));
  }
  for (std::size_t n = 1; n <= N; ++n)
    for (std::size_t i = 0; i <= n; ++i)
      c.coface[n].push_back(cycle_map(L, n - 1, n, coface_map(static_cast<int>(n), static_cast<int>(i))));
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t j = 0; j <= n; ++j)
      c.codegeneracy[n].push_back(cycle_map(L, n + 1, n, codegeneracy_map(static_cast<int>(n), static_cast<int>(j))));
  c.validate();
  return c;
}

CosimplicialAbGroup universal_A(int t, std::size_t N) {
  if (t < 1) throw DataError("t must be positive");
  CosimplicialAbGroup c = cycles_cosimplicial(t, N ? N : 2 * t + 4);
  c.name = "A(t=" + std::to_string(t) + ")";
  return c;
}

CosimplicialAbGroup universal_B(int t, std::size_t N) {
  if (t < 1) throw DataError("t must be positive");
  CosimplicialAbGroup c = cycles_cosimplicial(2 * t + 1, N ? N : 2 * t + 4);
  c.name = "B(t=" + std::to_string(t) + ")";
  return c;
}

std::vector<FgAbGroup> moore_cohomology(const CosimplicialAbGroup& c, std::size_t S) {
  if (S + 1 > c.top())
    throw WindowExceedsTruncation("window " + std::to_string(S) + " needs level " + std::to_string(S + 1) +
                                  ", truncation is " + std::to_string(c.top()));
  auto cx = sparse_complex(c, S);
  std::vector<FgAbGroup> out;
  for (std::size_t s = 0; s <= S; ++s) out.push_back(cx.cohomology(s));
  return out;
}

std::vector<FgAbGroup> normalized_cohomology(const CosimplicialAbGroup& c, std::size_t S) {
  if (S + 1 > c.top()) throw WindowExceedsTruncation("window exceeds truncation");
  if (!c.is_free()) throw NotFree("normalized complex is computed for free levels only");
  // K_n: saturated basis of ∩ ker s^j at level n
  std::vector<IntMatrix> K;
  for (std::size_t n = 0; n <= S + 1; ++n) {
    IntMatrix stack(0, c.dim(n));
    if (n == 0) {
      K.push_back(IntMatrix::identity(c.dim(0)));
      continue;
    }
    for (const auto& s : c.codegeneracy[n - 1]) stack = exactalg::vstack(stack, s.dense());
    K.push_back(exactalg::kernel_basis(stack));
  }
  exactalg::CochainComplex cx;
  for (std::size_t n = 0; n <= S + 1; ++n) cx.orders.emplace_back(K[n].cols(), 0);
  for (std::size_t n = 0; n <= S; ++n) {
    IntMatrix img = c.alternating(n).dense() * K[n];
    // K[n+1] has a left inverse since its columns are saturated
    exactalg::SmithForm sf = exactalg::snf(K[n + 1]);
    IntMatrix dplus(K[n + 1].cols(), K[n + 1].rows());
    for (std::size_t i = 0; i < K[n + 1].cols(); ++i) {
      if (abs(sf.d(i, i)) != 1) throw NotFree("normalized subcomplex is not saturated");
      dplus(i, i) = sf.d(i, i);
    }
    IntMatrix x = sf.v * dplus * sf.u * img;
    if (!(K[n + 1] * x == img)) throw NotAComplex("differential leaves the normalized subcomplex");
    cx.d.push_back(x);
  }
  std::vector<FgAbGroup> out;
  for (std::size_t s = 0; s <= S; ++s) out.push_back(cx.cohomology(static_cast<int>(s)));
  return out;
}

std::vector<std::size_t> modp_moore_dims(const CosimplicialAbGroup& c, long p, std::size_t S) {
  if (!exactalg::is_prime(p)) throw NotPrime(std::to_string(p));
  if (S + 1 > c.top()) throw WindowExceedsTruncation("window exceeds truncation");
  std::vector<std::size_t> rk;
  for (std::size_t n = 0; n <= S; ++n) {
    SparseIntMatrix a = c.alternating(n);
    exactalg::SparseModpMatrix m;
    m.ncols = a.ncols;
    m.p = static_cast<std::uint32_t>(p);
    m.rows.resize(a.nrows());
    for (std::size_t i = 0; i < a.nrows(); ++i)
      for (const auto& e : a.rows[i]) m.add(i, e.col, e.val);
    rk.push_back(m.rank());
  }
  std::vector<std::size_t> dims;
  for (std::size_t n = 0; n <= S; ++n) dims.push_back(c.dim(n) - rk[n] - (n > 0 ? rk[n - 1] : 0));
  return dims;
}

std::vector<Int> fundamental_cocycle(const CosimplicialAbGroup& c, std::size_t s) {
  if (s + 1 > c.top()) throw WindowExceedsTruncation("level " + std::to_string(s + 1) + " is not available");
  exactalg::CochainComplex cx;
  std::size_t lo = s > 0 ? s - 1 : 0;
  cx.first_degree = static_cast<int>(lo);
  for (std::size_t n = lo; n <= s + 1; ++n) cx.orders.push_back(c.orders[n]);
  for (std::size_t n = lo; n <= s; ++n) cx.d.push_back(c.alternating(n).dense());
  FgAbGroup h = cx.cohomology(static_cast<int>(s));
  if (h.factors() != std::vector<Int>{0})
    throw HypothesisFailed("H^" + std::to_string(s) + " is " + h.str() + ", not ℤ");
  return h.generator(0);
}

std::size_t sym2_index(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return j * (j + 1) / 2 + i;
}

namespace {

// Accumulates the image of e_a e_b into a sparse column, with the swap sign in the twisted case.
void add_product(std::map<std::size_t, long long>& col, std::size_t a, std::size_t b, long long v, bool twisted) {
  if (twisted && a > b) v = -v;
  col[sym2_index(a, b)] += v;
}

std::vector<std::vector<std::pair<std::size_t, long long>>> columns(const SparseIntMatrix& m) {
  std::vector<std::vector<std::pair<std::size_t, long long>>> cols(m.ncols);
  for (std::size_t i = 0; i < m.nrows(); ++i)
    for (const auto& e : m.rows[i]) cols[e.col].push_back({i, e.val});
  return cols;
}

SparseIntMatrix sym2_map(const SparseIntMatrix& m, bool twisted) {
  const std::size_t r = m.nrows(), c = m.ncols;
  auto cols = columns(m);
  SparseIntMatrix out(r * (r + 1) / 2, c * (c + 1) / 2);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      std::map<std::size_t, long long> col;
      for (const auto& [a, x] : cols[i])
        for (const auto& [b, y] : cols[j]) add_product(col, a, b, x * y, twisted);
      for (const auto& [row, v] : col) {
        long long w = v;
        if (twisted) {
          std::size_t jj = 0;
          while ((jj + 1) * (jj + 2) / 2 <= row) ++jj;
          if (row - jj * (jj + 1) / 2 == jj) w %= 2;  // diagonal class of order 2
        }
        if (w != 0) out.add(row, sym2_index(i, j), w);
      }
    }
  out.normalize();
  return out;
}

}  // namespace

CosimplicialAbGroup sym2(const CosimplicialAbGroup& c, bool twisted) {
  if (!c.is_free()) throw NotFree(c.name + " has torsion levels");
  CosimplicialAbGroup s;
  s.name = std::string(twisted ? "Sym2~(" : "Sym2(") + c.name + ")";
  for (std::size_t n = 0; n <= c.top(); ++n) {
    std::size_t r = c.dim(n);
    std::vector<Int> o(r * (r + 1) / 2, 0);
    std::vector<std::string> lab(o.size());
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i <= j; ++i) {
        if (twisted && i == j) o[sym2_index(i, j)] = 2;
        const auto& li = c.labels[n][i];
        const auto& lj = c.labels[n][j];
        lab[sym2_index(i, j)] = i == j ? li + "²" : li + "·" + lj;
      }
    s.orders.push_back(std::move(o));
    s.labels.push_back(std::move(lab));
  }
  s.coface.resize(c.top() + 1);
  s.codegeneracy.resize(c.top() + 1);
  for (std::size_t n = 0; n <= c.top(); ++n) {
    for (const auto& m : c.coface[n]) s.coface[n].push_back(sym2_map(m, twisted));
    for (const auto& m : c.codegeneracy[n]) s.codegeneracy[n].push_back(sym2_map(m, twisted));
  }
  return s;
}

std::vector<Int> cup_square(const CosimplicialAbGroup& c, const std::vector<Int>& x, std::size_t p, bool twisted) {
  if (2 * p > c.top()) throw WindowExceedsTruncation("cup square needs level " + std::to_string(2 * p));
  auto apply = [](const SparseIntMatrix& m, const std::vector<Int>& v) {
    std::vector<Int> out(m.nrows());
    for (std::size_t i = 0; i < m.nrows(); ++i)
      for (const auto& e : m.rows[i]) out[i] += Int(static_cast<long>(e.val)) * v[e.col];
    return out;
  };
  std::vector<Int> front = x, back = x;
  for (std::size_t k = 1; k <= p; ++k) {
    front = apply(c.coface[p + k][p + k], front);  // [p] -> [2p], inclusion of 0..p
    back = apply(c.coface[p + k][0], back);        // i -> i + p
  }
  const std::size_t r = c.dim(2 * p);
  std::vector<Int> out(r * (r + 1) / 2);
  for (std::size_t a = 0; a < r; ++a) {
    if (sgn(front[a]) == 0) continue;
    for (std::size_t b = 0; b < r; ++b) {
      if (sgn(back[b]) == 0) continue;
      Int v = front[a] * back[b];
      if (twisted && a > b) v = -v;
      out[sym2_index(a, b)] += v;
    }
  }
  if (twisted)
    for (std::size_t a = 0; a < r; ++a) {
      Int& d = out[sym2_index(a, a)];
      mpz_fdiv_r_ui(d.get_mpz_t(), d.get_mpz_t(), 2);
    }
  return out;
}

bool nonzero_mod_p(const CosimplicialAbGroup& c, std::size_t s, const std::vector<Int>& x, long p) {
  if (s == 0) {
    for (const auto& v : x)
      if (sgn(v) != 0 && mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p)) != 0) return true;
    return false;
  }
  SparseIntMatrix d = c.alternating(s - 1);
  exactalg::SparseModpMatrix m, mx;
  m.ncols = d.ncols;
  mx.ncols = d.ncols + 1;
  m.p = mx.p = static_cast<std::uint32_t>(p);
  m.rows.resize(d.nrows());
  mx.rows.resize(d.nrows());
  for (std::size_t i = 0; i < d.nrows(); ++i) {
    for (const auto& e : d.rows[i]) {
      m.add(i, e.col, e.val);
      mx.add(i, e.col, e.val);
    }
    mx.add(i, d.ncols, static_cast<long long>(mpz_fdiv_ui(x[i].get_mpz_t(), static_cast<unsigned long>(p))));
  }
  return mx.rank() > m.rank();
}

std::vector<std::size_t> priddy_dims(const CosimplicialAbGroup& c, int t, std::size_t S) {
  auto base = modp_moore_dims(c, 2, S);
  for (std::size_t i = 0; i <= S; ++i) {
    std::size_t allowed = (static_cast<int>(i) == t + 1) ? 1 : 0;
    if (base[i] > allowed)
      throw HypothesisFailed("H^" + std::to_string(i) + "(c ⊗ F2) has dimension " + std::to_string(base[i]));
  }
  // over F_2 the twisted and untwisted squares agree levelwise
  return modp_moore_dims(sym2(c, false), 2, S);
}

CosimplicialAbGroup direct_sum(const CosimplicialAbGroup& a, const CosimplicialAbGroup& b) {
  const std::size_t N = std::min(a.top(), b.top());
  CosimplicialAbGroup s;
  s.name = a.name + " ⊕ " + b.name;
  auto block = [](const SparseIntMatrix& x, const SparseIntMatrix& y) {
    SparseIntMatrix m(x.nrows() + y.nrows(), x.ncols + y.ncols);
    for (std::size_t i = 0; i < x.nrows(); ++i)
      for (const auto& e : x.rows[i]) m.add(i, e.col, e.val);
    for (std::size_t i = 0; i < y.nrows(); ++i)
      for (const auto& e : y.rows[i]) m.add(x.nrows() + i, x.ncols + e.col, e.val);
    return m;
  };
  s.coface.resize(N + 1);
  s.codegeneracy.resize(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    auto o = a.orders[n];
    o.insert(o.end(), b.orders[n].begin(), b.orders[n].end());
    s.orders.push_back(o);
    auto l = a.labels[n];
    l.insert(l.end(), b.labels[n].begin(), b.labels[n].end());
    s.labels.push_back(l);
    if (n >= 1)
      for (std::size_t i = 0; i <= n; ++i) s.coface[n].push_back(block(a.coface[n][i], b.coface[n][i]));
    if (n < N)
      for (std::size_t j = 0; j <= n; ++j) s.codegeneracy[n].push_back(block(a.codegeneracy[n][j], b.codegeneracy[n][j]));
  }
  return s;
}

}  // namespace picdesc::cosimp
