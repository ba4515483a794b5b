#include "picdesc/exactalg/group.hpp"

#include <algorithm>

#include "picdesc/errors.hpp"
#include "picdesc/exactalg/smith.hpp"

namespace picdesc::exactalg {

namespace {

bool is_normal_form(const std::vector<Int>& f) {
  bool seen_free = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 1 || sgn(f[i]) < 0) return false;
    if (sgn(f[i]) == 0) {
      seen_free = true;
      continue;
    }
    if (seen_free) return false;
    if (i > 0 && !mpz_divisible_p(f[i].get_mpz_t(), f[i - 1].get_mpz_t())) return false;
  }
  return true;
}

}  // namespace

FgAbGroup FgAbGroup::from_factors(std::vector<Int> factors, std::vector<std::string> labels) {
  FgAbGroup g;
  if (is_normal_form(factors)) {
    g.factors_ = std::move(factors);
    if (labels.size() == g.factors_.size()) g.labels_ = std::move(labels);
    return g;
  }
  // Insert each finite factor into a divisibility chain: (c_i, x) -> (lcm, gcd) from the top.
  std::vector<Int> chain;
  std::size_t zeros = 0;
  for (const auto& f : factors) {
    if (sgn(f) == 0) {
      ++zeros;
      continue;
    }
    Int x = abs(f);
    if (x == 1) continue;
    auto divides = [](const Int& a, const Int& b) { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; };
    std::size_t i = chain.size();
    bool placed = false;
    while (i > 0 && x != 1) {
      Int& c = chain[i - 1];
      if (divides(c, x)) break;
      if (divides(x, c) && (i == 1 || divides(chain[i - 2], x))) {
        chain.insert(chain.begin() + static_cast<long>(i - 1), x);
        placed = true;
        break;
      }
      Int gg, ll;
      mpz_gcd(gg.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      mpz_lcm(ll.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      c = ll;
      x = gg;
      --i;
    }
    if (!placed && x != 1) chain.insert(chain.begin() + static_cast<long>(i), x);
  }
  for (const auto& x : chain)
    if (x != 1) g.factors_.push_back(x);
  for (std::size_t i = 0; i < zeros; ++i) g.factors_.push_back(0);
  return g;
}

std::size_t FgAbGroup::free_rank() const {
  return static_cast<std::size_t>(std::count_if(factors_.begin(), factors_.end(),
                                                [](const Int& x) { return sgn(x) == 0; }));
}

std::vector<Int> FgAbGroup::torsion() const {
  std::vector<Int> t;
  for (const auto& x : factors_)
    if (sgn(x) != 0) t.push_back(x);
  return t;
}

Int FgAbGroup::order() const {
  Int o = 1;
  for (const auto& x : factors_) {
    if (sgn(x) == 0) return 0;
    o *= x;
  }
  return o;
}

Int FgAbGroup::torsion_order() const {
  Int o = 1;
  for (const auto& x : factors_)
    if (sgn(x) != 0) o *= x;
  return o;
}

std::vector<Int> FgAbGroup::primary_parts() const {
  std::vector<Int> out, frees;
  for (const auto& x : factors_) {
    if (sgn(x) == 0) {
      frees.push_back(0);
      continue;
    }
    Int n = x;
    for (Int p = 2; p * p <= n; ++p) {
      if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) continue;
      Int q = 1;
      while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        q *= p;
      }
      out.push_back(q);
    }
    if (n > 1) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  out.insert(out.end(), frees.begin(), frees.end());
  return out;
}

std::string group_string(const std::vector<Int>& factors) {
  if (factors.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " ⊕ ";
    s += sgn(factors[i]) == 0 ? std::string("ℤ") : "ℤ/" + factors[i].get_str();
  }
  return s;
}

std::string FgAbGroup::str() const { return group_string(factors_); }

std::string FgAbGroup::compact() const {
  if (factors_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors_.size();) {
    std::size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    const std::string one = sgn(factors_[i]) == 0 ? std::string("ℤ") : "ℤ/" + factors_[i].get_str();
    for (std::size_t k = i; k < j && j - i < 3; ++k) s += (s.empty() ? "" : " ⊕ ") + one;
    if (j - i >= 3) s += (s.empty() ? "" : " ⊕ ") + ("(" + one + ")^" + std::to_string(j - i));
    i = j;
  }
  return s;
}

std::string FgAbGroup::ascii() const {
  if (factors_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += "+";
    s += sgn(factors_[i]) == 0 ? std::string("Z") : "Z/" + factors_[i].get_str();
  }
  return s;
}

FgAbGroup FgAbGroup::direct_sum(const FgAbGroup& o) const {
  std::vector<Int> f = factors_;
  f.insert(f.end(), o.factors_.begin(), o.factors_.end());
  return from_factors(f);
}

void FgAbGroup::set_labels(std::vector<std::string> l) {
  if (l.size() != factors_.size()) throw DimensionMismatch("label count differs from generator count");
  labels_ = std::move(l);
}

std::size_t FgAbGroup::ambient_dim() const { return map_ ? map_->ambient : 0; }

std::optional<std::vector<Int>> FgAbGroup::try_coordinates(const std::vector<Int>& x) const {
  if (!map_) throw DataError("group carries no coordinate map");
  const SubquotientMap& m = *map_;
  if (x.size() != m.ambient) throw DimensionMismatch("ambient vector has wrong length");
  std::size_t z = m.cycle_basis.cols();
  std::vector<Int> y = m.solve_u.apply(x);
  std::vector<Int> c(z);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < m.solve_d.size()) {
      Int q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), y[i].get_mpz_t(), m.solve_d[i].get_mpz_t());
      if (sgn(r) != 0) return std::nullopt;
      c[i] = q;
    } else {
      // coordinates outside the cycle lattice must vanish modulo the ambient relations
      if (sgn(y[i]) != 0) return std::nullopt;
    }
  }
  std::vector<Int> w = m.quotient_u.apply(m.solve_v.apply(c));
  std::vector<Int> out;
  for (std::size_t k = 0; k < m.kept.size(); ++k) {
    Int v = w[m.kept[k]];
    if (sgn(factors_[k]) != 0) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), factors_[k].get_mpz_t());
    out.push_back(v);
  }
  return out;
}

std::vector<Int> FgAbGroup::coordinates(const std::vector<Int>& x) const {
  auto c = try_coordinates(x);
  if (!c) throw NotAComplex("vector is not a cycle");
  return *c;
}

std::vector<Int> FgAbGroup::generator(std::size_t k) const {
  if (!map_) throw DataError("group carries no coordinate map");
  return map_->generators.column(k);
}

IntMatrix FgAbGroup::induced_matrix(const IntMatrix& a) const {
  IntMatrix out(ngens(), ngens());
  for (std::size_t k = 0; k < ngens(); ++k) {
    std::vector<Int> c = coordinates(a.apply(generator(k)));
    for (std::size_t i = 0; i < ngens(); ++i) out(i, k) = c[i];
  }
  return out;
}

bool FgAbGroup::is_zero_class(const std::vector<Int>& x) const {
  for (const auto& v : coordinates(x))
    if (sgn(v) != 0) return false;
  return true;
}

FgAbGroup homology(const IntMatrix& f, const IntMatrix& g, const std::vector<Int>& mid,
                   const std::vector<Int>& target) {
  const std::size_t n = mid.size();
  if (f.rows() != n || g.cols() != n)
    throw DimensionMismatch("f is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) + ", g is " +
                            std::to_string(g.rows()) + "x" + std::to_string(g.cols()) + ", middle rank " +
                            std::to_string(n));
  if (g.rows() != target.size()) throw DimensionMismatch("target order vector length");
  if (!(g * f).is_zero()) {
    IntMatrix gf = g * f;
    reduce_rows(gf, target);
    if (!gf.is_zero()) throw NotAComplex("g∘f is not zero");
  }

  auto map = std::make_shared<SubquotientMap>();
  map->ambient = n;
  map->ambient_orders = mid;

  // cycle lattice: kernel of [g | diag(target torsion)], projected to the first n coordinates
  std::vector<std::size_t> tors;
  for (std::size_t i = 0; i < target.size(); ++i)
    if (sgn(target[i]) != 0) tors.push_back(i);
  IntMatrix big(g.rows(), n + tors.size());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) big(i, j) = g(i, j);
  for (std::size_t k = 0; k < tors.size(); ++k) big(tors[k], n + k) = target[tors[k]];
  IntMatrix kb = kernel_basis(big);
  std::vector<std::size_t> top(n);
  for (std::size_t i = 0; i < n; ++i) top[i] = i;
  IntMatrix zb = kb.select_rows(top);
  const std::size_t z = zb.cols();
  map->cycle_basis = zb;

  SmithForm sz = snf(zb);
  map->solve_u = sz.u;
  map->solve_v = sz.v;
  for (std::size_t i = 0; i < sz.rank; ++i) map->solve_d.push_back(sz.d(i, i));

  // boundaries: im f plus the middle relations
  std::size_t nrel = 0;
  for (const auto& o : mid)
    if (sgn(o) != 0) ++nrel;
  IntMatrix bnd(n, f.cols() + nrel);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) bnd(i, j) = f(i, j);
  for (std::size_t i = 0, k = f.cols(); i < n; ++i)
    if (sgn(mid[i]) != 0) bnd(i, k++) = mid[i];

  // express boundaries in the cycle basis
  IntMatrix coeffs(z, bnd.cols());
  for (std::size_t j = 0; j < bnd.cols(); ++j) {
    std::vector<Int> y = sz.u.apply(bnd.column(j));
    std::vector<Int> c(z);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < sz.rank) {
        if (!mpz_divisible_p(y[i].get_mpz_t(), sz.d(i, i).get_mpz_t()))
          throw NotAComplex("boundary outside the cycle lattice");
        c[i] = y[i] / sz.d(i, i);
      } else if (sgn(y[i]) != 0) {
        throw NotAComplex("boundary outside the cycle lattice");
      }
    }
    std::vector<Int> cc = sz.v.apply(c);
    for (std::size_t i = 0; i < z; ++i) coeffs(i, j) = cc[i];
  }

  std::vector<Int> factors;
  if (z > 0) {
    SmithForm sq = snf(coeffs);
    map->quotient_u = sq.u;
    IntMatrix uinv = unimodular_inverse(sq.u);
    for (std::size_t i = 0; i < z; ++i) {
      Int d = i < sq.rank ? sq.d(i, i) : Int(0);
      if (d == 1) continue;
      map->kept.push_back(i);
      factors.push_back(d);
    }
    map->generators = zb * uinv.select_cols(map->kept);
    // reduce representatives modulo ambient relations for readability
    reduce_rows(map->generators, mid);
  } else {
    map->quotient_u = IntMatrix(0, 0);
    map->generators = IntMatrix(n, 0);
  }
  FgAbGroup h = FgAbGroup::from_factors(factors);
  h.attach(map);
  return h;
}

FgAbGroup cohomology_at(const IntMatrix& f, const IntMatrix& g) {
  if (f.rows() != g.cols())
    throw DimensionMismatch("f has " + std::to_string(f.rows()) + " rows but g has " + std::to_string(g.cols()) +
                            " columns");
  return homology(f, g, std::vector<Int>(f.rows(), 0), std::vector<Int>(g.rows(), 0));
}

FgAbGroup cokernel(const IntMatrix& rel, const std::vector<Int>& orders) {
  return homology(rel, IntMatrix(0, orders.size()), orders, {});
}

FgAbGroup kernel(const IntMatrix& g, const std::vector<Int>& source, const std::vector<Int>& target) {
  return homology(IntMatrix(source.size(), 0), g, source, target);
}

}  // namespace picdesc::exactalg
