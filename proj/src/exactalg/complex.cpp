#include "picdesc/exactalg/complex.hpp"

#include <map>

#include "picdesc/errors.hpp"

namespace picdesc::exactalg {

void CochainComplex::validate() const {
  if (d.size() + 1 < levels() - (levels() ? 1 : 0)) throw DimensionMismatch("too few differentials");
  for (std::size_t k = 0; k < d.size() && k + 1 < levels(); ++k) {
    const IntMatrix& m = d[k];
    if (m.cols() != dim(k) || m.rows() != dim(k + 1))
      throw DimensionMismatch("differential " + std::to_string(k) + " has shape " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()));
    // relations must map into relations
    for (std::size_t j = 0; j < dim(k); ++j) {
      if (sgn(orders[k][j]) == 0) continue;
      for (std::size_t i = 0; i < dim(k + 1); ++i) {
        Int v = m(i, j) * orders[k][j];
        const Int& o = orders[k + 1][i];
        if (sgn(o) == 0 ? sgn(v) != 0 : !mpz_divisible_p(v.get_mpz_t(), o.get_mpz_t()))
          throw NotAComplex("differential " + std::to_string(k) + " is not well defined on relations");
      }
    }
    if (k + 1 < d.size() && k + 2 < levels()) {
      IntMatrix dd = d[k + 1] * m;
      reduce_rows(dd, orders[k + 2]);
      if (!dd.is_zero()) throw NotAComplex("d∘d != 0 at level " + std::to_string(k));
    }
  }
}

FgAbGroup CochainComplex::cohomology(int degree) const {
  int k = degree - first_degree;
  if (k < 0 || static_cast<std::size_t>(k) >= levels()) return FgAbGroup();
  std::size_t n = dim(k);
  IntMatrix f = (k > 0 && static_cast<std::size_t>(k - 1) < d.size()) ? d[k - 1] : IntMatrix(n, 0);
  bool has_out = static_cast<std::size_t>(k) < d.size() && static_cast<std::size_t>(k + 1) < levels();
  IntMatrix g = has_out ? d[k] : IntMatrix(0, n);
  std::vector<Int> tgt = has_out ? orders[k + 1] : std::vector<Int>{};
  return homology(f, g, orders[k], tgt);
}

FgAbGroup SparseCochainComplex::cohomology(std::size_t s) const {
  if (s >= levels()) return FgAbGroup();
  const std::size_t n = orders[s].size();
  const bool has_out = s < d.size() && s + 1 < levels();
  const bool has_in = s > 0 && s - 1 < d.size();

  std::vector<std::size_t> tors_next, tors_here;
  if (has_out)
    for (std::size_t i = 0; i < orders[s + 1].size(); ++i)
      if (orders[s + 1][i] != 0) tors_next.push_back(i);
  for (std::size_t i = 0; i < n; ++i)
    if (orders[s][i] != 0) tors_here.push_back(i);

  // A_s = [d_s | r_{s+1}]
  SparseIntMatrix a(has_out ? orders[s + 1].size() : 0, n + tors_next.size());
  if (has_out) {
    a.rows = d[s].rows;
    a.ncols = n + tors_next.size();
    for (std::size_t k = 0; k < tors_next.size(); ++k) a.add(tors_next[k], n + k, orders[s + 1][tors_next[k]]);
  }

  // D^{s-1} = [[d_{s-1}, r_s], [-h, -d_R]] on P^{s-1} ⊕ R^s
  const std::size_t nprev = has_in ? orders[s - 1].size() : 0;
  SparseIntMatrix dm(n + tors_next.size(), nprev + tors_here.size());
  if (has_in)
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& e : d[s - 1].rows[i]) dm.add(i, e.col, e.val);
  for (std::size_t k = 0; k < tors_here.size(); ++k) dm.add(tors_here[k], nprev + k, orders[s][tors_here[k]]);
  if (has_out) {
    std::vector<long> tors_index(n, -1);
    for (std::size_t k = 0; k < tors_here.size(); ++k) tors_index[tors_here[k]] = static_cast<long>(k);
    for (std::size_t k = 0; k < tors_next.size(); ++k) {
      const std::size_t i = tors_next[k];
      const long long o = orders[s + 1][i];
      std::map<std::uint32_t, long long> h;
      for (const auto& e : d[s].rows[i]) {
        if (has_in)
          for (const auto& f : d[s - 1].rows[e.col]) h[f.col] += e.val * f.val;
        long t = tors_index[e.col];
        if (t >= 0) {
          long long v = e.val * orders[s][e.col];
          if (v % o != 0) throw NotAComplex("differential not well defined on relations");
          dm.add(n + k, nprev + t, -v / o);
        }
      }
      for (const auto& [c, v] : h) {
        if (v % o != 0) throw NotAComplex("d∘d is not zero modulo relations");
        dm.add(n + k, c, -v / o);
      }
    }
  }
  SparseSmith sa = sparse_smith(a);
  SparseSmith sd = sparse_smith(dm);
  const std::size_t total = n + tors_next.size();
  if (sa.rank + sd.rank > total) throw NotAComplex("ranks exceed level dimension");
  std::vector<Int> f = sd.torsion;
  for (std::size_t i = 0; i < total - sa.rank - sd.rank; ++i) f.push_back(0);
  return FgAbGroup::from_factors(f);
}

}  // namespace picdesc::exactalg
