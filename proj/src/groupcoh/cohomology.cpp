#include "picdesc/groupcoh/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "picdesc/errors.hpp"
#include "picdesc/exactalg/complex.hpp"
#include "picdesc/exactalg/modp.hpp"
#include "picdesc/exactalg/sparse.hpp"

namespace picdesc::groupcoh {

using exactalg::homology;
using exactalg::ModpEchelon;
using exactalg::ModpMatrix;
using exactalg::SparseCochainComplex;
using exactalg::SparseIntMatrix;
using exactalg::SparseModpMatrix;

namespace {

std::vector<Int> repeat(const std::vector<Int>& v, std::size_t k) {
  std::vector<Int> out;
  for (std::size_t i = 0; i < k; ++i) out.insert(out.end(), v.begin(), v.end());
  return out;
}

void place(IntMatrix& dst, const IntMatrix& src, std::size_t r0, std::size_t c0, const Int& scale = 1) {
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) dst(r0 + i, c0 + j) += scale * src(i, j);
}

// Index of a tuple of non-identity elements, base |G|-1.
struct TupleIndex {
  std::vector<std::size_t> code;  // element -> 0..n-2, identity -> n-1
  std::vector<std::size_t> elem;  // inverse
  std::size_t base;

  explicit TupleIndex(const FiniteGroup& G) : code(G.order()), base(G.order() - 1) {
    std::size_t k = 0;
    for (std::size_t g = 0; g < G.order(); ++g) {
      if (g == G.identity()) {
        code[g] = base;
        continue;
      }
      code[g] = k++;
      elem.push_back(g);
    }
  }

  std::size_t count(int s) const {
    std::size_t c = 1;
    for (int i = 0; i < s; ++i) c *= base;
    return c;
  }

  // digits most significant first
  void decode(std::size_t idx, int s, std::vector<std::size_t>& out) const {
    out.assign(s, 0);
    for (int i = s - 1; i >= 0; --i) {
      out[i] = elem[idx % base];
      idx /= base;
    }
  }

  std::size_t encode(const std::vector<std::size_t>& t, std::size_t from, std::size_t to) const {
    std::size_t idx = 0;
    for (std::size_t i = from; i < to; ++i) idx = idx * base + code[t[i]];
    return idx;
  }
};

// Visits the nonzero terms of the normalized bar differential at one (s+1)-tuple:
// fn(tuple index of the s-tuple, coefficient sign, acting element or identity).
template <class Fn>
void bar_terms(const FiniteGroup& G, const TupleIndex& ti, const std::vector<std::size_t>& t, int s, Fn&& fn) {
  // g1 · f(g2..g_{s+1})
  fn(ti.encode(t, 1, s + 1), 1, t[0]);
  std::vector<std::size_t> merged(s);
  for (int i = 1; i <= s; ++i) {
    std::size_t prod = G.mul(t[i - 1], t[i]);
    if (prod == G.identity()) continue;
    std::size_t k = 0;
    for (int j = 0; j < s + 1; ++j) {
      if (j == i) continue;
      merged[k++] = (j == i - 1) ? prod : t[j];
    }
    fn(ti.encode(merged, 0, s), (i % 2 == 0) ? 1 : -1, G.identity());
  }
  fn(ti.encode(t, 0, s), ((s + 1) % 2 == 0) ? 1 : -1, G.identity());
}

std::string budget_message(std::size_t order, int s, std::size_t rank, double budget) {
  return "|G|^(s+1)*rank = " + std::to_string(order) + "^" + std::to_string(s + 1) + "*" + std::to_string(rank) +
         " exceeds budget " + std::to_string(static_cast<long long>(budget));
}

void check_budget(std::size_t order, int s_max, std::size_t rank, double budget) {
  double size = std::pow(static_cast<double>(order), s_max + 1) * static_cast<double>(std::max<std::size_t>(rank, 1));
  if (size > budget) throw BudgetExceeded(budget_message(order, s_max, rank, budget));
}

}  // namespace

FgAbGroup invariants(const GModule& m) {
  const std::size_t n = m.rank(), k = m.group().generators().size();
  IntMatrix g(n * k, n);
  for (std::size_t i = 0; i < k; ++i) place(g, m.generator_action(i) - IntMatrix::identity(n), i * n, 0);
  return homology(IntMatrix(n, 0), g, m.orders(), repeat(m.orders(), k));
}

FgAbGroup h1_crossed(const GModule& m) {
  const FiniteGroup& G = m.group();
  const std::size_t n = m.rank(), k = G.generators().size(), N = G.order();
  const auto& orders = m.orders();
  // f(g) = L[g] F, F = (f(s_1), ..., f(s_k))
  std::vector<IntMatrix> L(N);
  L[G.identity()] = IntMatrix(n, n * k);
  auto step = [&](std::size_t g, std::size_t i) {
    IntMatrix r = L[g];
    place(r, m.action(g), 0, i * n);
    exactalg::reduce_rows(r, orders);
    return r;
  };
  for (std::size_t g : G.bfs_order())
    if (g != G.identity()) L[g] = step(G.tree_parent(g), G.tree_generator(g));

  // one row per distinct (constraint, modulus)
  std::set<std::pair<std::vector<Int>, Int>> rows;
  for (std::size_t g = 0; g < N; ++g)
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t h = G.mul(g, G.generators()[i]);
      if (h != G.identity() && G.tree_parent(h) == g && G.tree_generator(h) == i) continue;
      IntMatrix c = L[h] - step(g, i);
      exactalg::reduce_rows(c, orders);
      for (std::size_t a = 0; a < n; ++a) {
        auto row = c.row(a);
        if (std::any_of(row.begin(), row.end(), [](const Int& x) { return sgn(x) != 0; })) rows.insert({row, orders[a]});
      }
    }
  IntMatrix C(rows.size(), n * k);
  std::vector<Int> row_orders;
  std::size_t ri = 0;
  for (const auto& [row, o] : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) C(ri, j) = row[j];
    row_orders.push_back(o);
    ++ri;
  }

  IntMatrix B(n * k, n);
  for (std::size_t i = 0; i < k; ++i) place(B, m.generator_action(i) - IntMatrix::identity(n), i * n, 0);
  return homology(B, C, repeat(orders, k), row_orders);
}

FgAbGroup cyclic_h(const IntMatrix& a, std::size_t n, const std::vector<Int>& orders, int s) {
  const std::size_t r = orders.size();
  if (a.rows() != r || a.cols() != r) throw DimensionMismatch("cyclic action has wrong shape");
  if (n == 0) throw DataError("cyclic group order must be positive");
  IntMatrix one = IntMatrix::identity(r), norm(r, r), pw = one;
  for (std::size_t i = 0; i < n; ++i) {
    norm = norm + pw;
    pw = pw * a;
    exactalg::reduce_rows(pw, orders);
  }
  exactalg::reduce_rows(norm, orders);
  if (!equal_mod(pw, one, orders)) throw InvalidAction("generator does not have the stated order on the module");
  IntMatrix tm1 = a - one;
  if (s < 0) return FgAbGroup();
  if (s == 0) return homology(IntMatrix(r, 0), tm1, orders, orders);
  if (s % 2 == 1) return homology(tm1, norm, orders, orders);
  return homology(norm, tm1, orders, orders);
}

FgAbGroup cyclic_h(const GModule& m, std::size_t element, int s) {
  return cyclic_h(m.action(element), m.group().element_order(element), m.orders(), s);
}

std::vector<FgAbGroup> bar_h(const GModule& m, int s_max, double budget) {
  const FiniteGroup& G = m.group();
  const std::size_t r = m.rank();
  check_budget(G.order(), s_max, r, budget);
  TupleIndex ti(G);
  std::vector<long long> ord;
  for (const auto& o : m.orders()) ord.push_back(o.get_si());

  SparseCochainComplex cx;
  for (int s = 0; s <= s_max + 1; ++s) {
    std::vector<long long> lv;
    for (std::size_t t = 0; t < ti.count(s); ++t) lv.insert(lv.end(), ord.begin(), ord.end());
    cx.orders.push_back(std::move(lv));
  }
  std::vector<std::size_t> tuple;
  for (int s = 0; s <= s_max; ++s) {
    SparseIntMatrix d(ti.count(s + 1) * r, ti.count(s) * r);
    for (std::size_t row_t = 0; row_t < ti.count(s + 1); ++row_t) {
      ti.decode(row_t, s + 1, tuple);
      bar_terms(G, ti, tuple, s, [&](std::size_t col_t, int sign, std::size_t act) {
        for (std::size_t a = 0; a < r; ++a) {
          if (act == G.identity()) {
            d.add(row_t * r + a, col_t * r + a, sign);
          } else {
            const IntMatrix& A = m.action(act);
            for (std::size_t c = 0; c < r; ++c)
              if (sgn(A(a, c)) != 0) d.add(row_t * r + a, col_t * r + c, sign * A(a, c).get_si());
          }
        }
      });
    }
    d.normalize();
    cx.d.push_back(std::move(d));
  }
  std::vector<FgAbGroup> out;
  for (int s = 0; s <= s_max; ++s) out.push_back(cx.cohomology(s));
  return out;
}

std::vector<std::size_t> modp_bar_dims(const FiniteGroup& G, long p, int s_max, double budget) {
  if (!exactalg::is_prime(p)) throw NotPrime(std::to_string(p));
  check_budget(G.order(), s_max, 1, budget);
  TupleIndex ti(G);
  std::vector<std::size_t> ranks;
  std::vector<std::size_t> tuple;
  for (int s = 0; s <= s_max; ++s) {
    SparseModpMatrix d;
    d.ncols = ti.count(s);
    d.p = static_cast<std::uint32_t>(p);
    d.rows.resize(ti.count(s + 1));
    for (std::size_t row_t = 0; row_t < ti.count(s + 1); ++row_t) {
      ti.decode(row_t, s + 1, tuple);
      bar_terms(G, ti, tuple, s, [&](std::size_t col_t, int sign, std::size_t) { d.add(row_t, col_t, sign); });
    }
    ranks.push_back(d.rank());
  }
  std::vector<std::size_t> dims;
  for (int s = 0; s <= s_max; ++s) dims.push_back(ti.count(s) - ranks[s] - (s > 0 ? ranks[s - 1] : 0));
  return dims;
}

std::vector<std::size_t> modp_resolution_dims(const FiniteGroup& G, long p, int s_max) {
  if (!exactalg::is_prime(p) || p >= 65536) throw NotPrime(std::to_string(p));
  const auto P = static_cast<std::uint32_t>(p);
  const std::size_t n = G.order();
  // F_s = (F_p[G])^{r_s}; coordinate j*n + g is the basis vector g·e_j.
  auto act = [&](std::size_t h, const std::vector<std::uint32_t>& x) {
    std::vector<std::uint32_t> y(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i]) y[(i / n) * n + G.mul(h, i % n)] = x[i];
    return y;
  };
  // images[s][j]: d_s(e_j) as a vector in F_{s-1}; d_0 is the augmentation F_0 -> F_p.
  std::vector<std::vector<std::vector<std::uint32_t>>> images(s_max + 2);
  std::vector<std::size_t> rk(s_max + 2);
  rk[0] = 1;
  ModpMatrix prev(1, n, P);  // matrix of d_0
  for (std::size_t g = 0; g < n; ++g) prev(0, g) = 1;
  for (int s = 1; s <= s_max + 1; ++s) {
    ModpMatrix ker = prev.kernel();  // columns span ker d_{s-1} in F_{s-1}
    const std::size_t dim = ker.cols(), ambient = ker.rows();
    ModpEchelon span(ambient, P);
    for (std::size_t c = 0; c < ker.cols() && span.size() < dim; ++c) {
      auto v = ker.column(c);
      if (span.contains(v)) continue;
      images[s].push_back(v);
      for (std::size_t h = 0; h < n; ++h) span.insert(act(h, v));
    }
    rk[s] = images[s].size();
    ModpMatrix d(ambient, rk[s] * n, P);
    for (std::size_t j = 0; j < rk[s]; ++j)
      for (std::size_t h = 0; h < n; ++h) {
        auto col = act(h, images[s][j]);
        for (std::size_t i = 0; i < ambient; ++i) d(i, j * n + h) = col[i];
      }
    prev = std::move(d);
  }
  // Hom_G(F_s, F_p) = F_p^{r_s}; the induced differential is the augmented matrix of d_{s+1}.
  std::vector<std::size_t> eps_rank(s_max + 2, 0);
  for (int s = 1; s <= s_max + 1; ++s) {
    ModpMatrix e(rk[s - 1], rk[s], P);
    for (std::size_t j = 0; j < rk[s]; ++j)
      for (std::size_t i = 0; i < rk[s - 1]; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t g = 0; g < n; ++g) acc += images[s][j][i * n + g];
        e(i, j) = static_cast<std::uint32_t>(acc % P);
      }
    eps_rank[s] = e.rank();
  }
  std::vector<std::size_t> dims;
  for (int s = 0; s <= s_max; ++s) dims.push_back(rk[s] - eps_rank[s + 1] - (s > 0 ? eps_rank[s] : 0));
  return dims;
}

Quotient quotient_group(const FiniteGroup& G, const std::vector<std::size_t>& normal_generators) {
  Quotient q;
  q.normal = G.subgroup(normal_generators);
  std::set<std::size_t> nset(q.normal.begin(), q.normal.end());
  for (std::size_t g : G.generators())
    for (std::size_t x : q.normal)
      if (!nset.count(G.mul(G.mul(g, x), G.inv(g))))
        throw NotNormal("subgroup of order " + std::to_string(q.normal.size()) + " is not normal");
  const std::size_t N = G.order();
  q.coset_of.assign(N, N);
  std::vector<std::size_t> reps;
  for (std::size_t g = 0; g < N; ++g) {
    if (q.coset_of[g] != N) continue;
    for (std::size_t x : q.normal) q.coset_of[G.mul(g, x)] = reps.size();
    reps.push_back(g);
  }
  std::vector<std::vector<std::size_t>> table(reps.size(), std::vector<std::size_t>(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) table[a][b] = q.coset_of[G.mul(reps[a], reps[b])];
  std::vector<std::size_t> gens;
  for (std::size_t g : G.generators()) gens.push_back(q.coset_of[g]);
  q.group = std::make_shared<FiniteGroup>(std::move(table), std::move(gens), G.generator_names(),
                                          G.name() + "/N");
  return q;
}

namespace {

// "sgn" when every generator acts by +1 or -1 and some by -1.
std::string action_label(const GModule& m) {
  const std::size_t n = m.rank();
  const IntMatrix one = IntMatrix::identity(n), neg = IntMatrix(n, n) - one;
  bool trivial = true, sign = true;
  for (std::size_t i = 0; i < m.group().generators().size(); ++i) {
    const IntMatrix& a = m.generator_action(i);
    if (equal_mod(a, one, m.orders())) continue;
    trivial = false;
    if (!equal_mod(a, neg, m.orders())) sign = false;
  }
  if (trivial) return "trivial";
  if (sign) return "sgn";
  return "nontrivial";
}

// Hom(a, b) = 0 for every subquotient a of the source and b of the target.
bool hom_vanishes(const FgAbGroup& a, const FgAbGroup& b) {
  if (a.is_trivial() || b.is_trivial()) return true;
  if (!a.is_finite() || !b.is_finite()) return false;
  Int g;
  Int oa = a.order(), ob = b.order();
  mpz_gcd(g.get_mpz_t(), oa.get_mpz_t(), ob.get_mpz_t());
  return g == 1;
}

// Graded pieces from the top quotient (p = 0) down to the bottom subgroup (p = s).
bool extension_splits(const std::vector<FgAbGroup>& pieces) {
  bool seen_torsion = false;
  Int primes = 1;
  for (const auto& g : pieces) {
    if (g.is_trivial()) continue;
    if (g.free_rank() > 0 && seen_torsion) return false;
    if (!g.torsion().empty()) {
      seen_torsion = true;
      Int t = g.torsion_order(), c;
      mpz_gcd(c.get_mpz_t(), t.get_mpz_t(), primes.get_mpz_t());
      if (c != 1) return false;
      primes *= t;
    }
  }
  return true;
}

}  // namespace

LhsResult lhs_assemble(const GModule& m, const std::vector<std::size_t>& normal_generators, int S) {
  const FiniteGroup& G = m.group();
  Quotient Q = quotient_group(G, normal_generators);
  const std::size_t nord = Q.normal.size();
  std::size_t n0 = G.identity();
  for (std::size_t x : Q.normal)
    if (G.element_order(x) == nord) {
      n0 = x;
      break;
    }
  if (G.element_order(n0) != nord) throw NotCyclic("normal subgroup of order " + std::to_string(nord));

  // h^{-1} n0 h = n0^b for each generator h
  std::vector<long> b(G.generators().size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::size_t h = G.generators()[i];
    std::size_t c = G.mul(G.mul(G.inv(h), n0), h);
    long e = 0;
    while (G.power(n0, e) != c) ++e;
    b[i] = e;
  }

  LhsResult res;
  res.window = S;
  res.normal_order = nord;
  std::vector<GModule> rowmods;
  for (int q = 0; q <= S + 1; ++q) {
    FgAbGroup h = cyclic_h(m, n0, q);
    std::vector<IntMatrix> acts;
    for (std::size_t i = 0; i < b.size(); ++i) {
      Int factor = 1;
      long k = q / 2 + (q % 2 == 1 ? 1 : 0);
      if (q == 0) k = 0;
      for (long j = 0; j < k; ++j) factor *= b[i];
      IntMatrix amb = m.generator_action(i);
      for (std::size_t r = 0; r < amb.rows(); ++r)
        for (std::size_t c = 0; c < amb.cols(); ++c) amb(r, c) *= factor;
      acts.push_back(h.is_trivial() ? IntMatrix(0, 0) : h.induced_matrix(amb));
    }
    GModule qm(Q.group, h.factors(), {}, acts, "H^" + std::to_string(q) + "(N,M)");
    res.rows.push_back(h);
    res.row_action.push_back(action_label(qm));
    rowmods.push_back(std::move(qm));
  }

  auto qgen = Q.group->cyclic_generator();
  res.e2.assign(S + 2, {});
  for (int p = 0; p <= S + 1; ++p) res.e2[p].resize(S + 2 - p);
  for (int q = 0; q <= S + 1; ++q) {
    int pmax = S + 1 - q;
    if (qgen) {
      for (int p = 0; p <= pmax; ++p) res.e2[p][q] = cyclic_h(rowmods[q], *qgen, p);
    } else {
      auto col = bar_h(rowmods[q], pmax);
      for (int p = 0; p <= pmax; ++p) res.e2[p][q] = col[p];
    }
  }

  res.collapses = true;
  for (int p = 0; p <= S; ++p)
    for (int q = 0; p + q <= S; ++q)
      for (int r = 2; q - r + 1 >= 0; ++r) {
        const FgAbGroup& src = res.e2[p][q];
        const FgAbGroup& tgt = res.e2[p + r][q - r + 1];
        bool ok = hom_vanishes(src, tgt);
        if (src.is_trivial() || tgt.is_trivial()) continue;
        res.certificate.push_back("d" + std::to_string(r) + ": E(" + std::to_string(p) + "," + std::to_string(q) +
                                  ") " + src.str() + " -> E(" + std::to_string(p + r) + "," +
                                  std::to_string(q - r + 1) + ") " + tgt.str() + (ok ? " vanishes" : " unknown"));
        if (!ok) res.collapses = false;
      }

  for (int s = 0; s <= S; ++s) {
    std::vector<FgAbGroup> pieces;
    for (int p = 0; p <= s; ++p) pieces.push_back(res.e2[p][s - p]);
    bool ok = res.collapses && extension_splits(pieces);
    FgAbGroup tot;
    if (ok)
      for (const auto& g : pieces) tot = tot.direct_sum(g);
    res.total.push_back(tot);
    res.resolved.push_back(ok);
  }
  return res;
}

}  // namespace picdesc::groupcoh
