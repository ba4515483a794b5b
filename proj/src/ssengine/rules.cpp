#include "picdesc/ssengine/rules.hpp"

#include <deque>

#include "picdesc/errors.hpp"
#include "picdesc/exactalg/modp.hpp"

namespace picdesc::ssengine {

namespace {

std::string bd(const Bidegree& b) { return "(" + std::to_string(b.s) + "," + std::to_string(b.t) + ")"; }

Poly scale(const Algebra& A, const Poly& p, const Int& c) {
  Poly out;
  for (const auto& [m, v] : p) out[m] = v * c;
  return A.normalize(out);
}

Poly add(const Algebra& A, const Poly& x, const Poly& y) {
  Poly out = x;
  for (const auto& [m, v] : y) out[m] += v;
  return A.normalize(out);
}

bool homogeneous(const Algebra& A, const Poly& p, const Bidegree& b) {
  for (const auto& [m, c] : p)
    if (A.degree(m) != b) return false;
  return true;
}

}  // namespace

LeibnizResult leibniz_close(const E2Chart& chart, int r, const std::vector<MonomialSeed>& seeds,
                            const std::vector<std::size_t>& permanent) {
  if (!chart.algebra) throw DataError(chart.name + ": Leibniz closure needs an algebra");
  const Algebra& A = *chart.algebra;
  const int s_cap = chart.window.s_max;
  LeibnizResult res;
  res.r = r;
  auto& d = res.d;
  std::deque<Monomial> queue;

  auto set = [&](const Monomial& m, const Poly& v) {
    Poly nv = A.normalize(v);
    auto it = d.find(m);
    if (it != d.end()) {
      if (it->second != nv)
        throw RuleNotClosed("d" + std::to_string(r) + "(" + A.label(m) + ") is both " + A.format(it->second) +
                            " and " + A.format(nv));
      return false;
    }
    d[m] = nv;
    queue.push_back(m);
    return true;
  };

  // atoms: seeds, permanent generators, inverses of invertible atoms
  std::vector<Monomial> atoms;
  set(A.one(), {});
  for (const auto& sd : seeds) {
    if (!homogeneous(A, sd.target, A.degree(sd.source) + dr_offset(r)))
      throw RuleNotClosed("seed d" + std::to_string(r) + "(" + A.label(sd.source) + ") = " + A.format(sd.target) +
                          " breaks the bidegree law");
    set(sd.source, sd.target);
    atoms.push_back(sd.source);
  }
  for (auto g : permanent) {
    set(A.unit(g), {});
    atoms.push_back(A.unit(g));
  }
  const std::size_t base = atoms.size();
  for (std::size_t k = 0; k < base; ++k) {
    const Monomial& x = atoms[k];
    bool inv = true;
    for (std::size_t i = 0; i < x.size(); ++i)
      inv = inv && (x[i] == 0 || A.gens[i].invertible || (A.gens[i].coefficient && A.gens[i].laurent));
    if (!inv) continue;
    Monomial y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
    // d(x^-1) = -x^-2 d(x) for x of even stem
    Monomial y2(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y2[i] = 2 * y[i];
    set(y, scale(A, A.mul(Poly{{y2, 1}}, d.at(x)), -1));
    atoms.push_back(y);
  }

  while (!queue.empty()) {
    Monomial m = queue.front();
    queue.pop_front();
    const Poly dm = d.at(m);
    const int stem_m = A.degree(m).stem();
    for (const auto& a : atoms) {
      Poly prod = A.mul(Poly{{m, 1}}, Poly{{a, 1}});
      if (prod.size() != 1) continue;
      const auto [n, c] = *prod.begin();
      if (!A.in_box(n, s_cap)) continue;
      Int o = A.order(n), cinv;
      if (sgn(o) == 0) {
        if (c != 1 && c != -1) continue;
        cinv = c;
      } else if (!mpz_invert(cinv.get_mpz_t(), c.get_mpz_t(), o.get_mpz_t())) {
        continue;
      }
      Poly v = add(A, A.mul(dm, Poly{{a, 1}}),
                   scale(A, A.mul(Poly{{m, 1}}, d.at(a)), (stem_m % 2 == 0) ? 1 : -1));
      set(n, scale(A, v, cinv));
    }
  }

  for (const auto& [b, basis] : chart.cells) {
    const Bidegree tb = b + dr_offset(r);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!basis[i].mono) continue;
      auto it = d.find(*basis[i].mono);
      if (it == d.end() || it->second.empty()) continue;
      if (!chart.window.contains(tb)) continue;
      auto vec = chart.vector_of(it->second, tb);
      if (!vec)
        throw UnresolvableProduct("d" + std::to_string(r) + "(" + basis[i].label + ") = " + A.format(it->second) +
                                  " has no basis expression at " + bd(tb));
      DifferentialRule rule;
      rule.r = r;
      rule.source = b;
      rule.source_vec.assign(basis.size(), 0);
      rule.source_vec[i] = 1;
      rule.target_vec = *vec;
      rule.provenance = Provenance::Leibniz;
      rule.source_label = basis[i].label;
      rule.target_label = A.format(it->second);
      res.rules.push_back(rule);
    }
  }
  return res;
}

ImportResult import_comparison(const std::vector<DifferentialRule>& ring_rules, const E2Chart& pic) {
  ImportResult out;
  for (const auto& rr : ring_rules) {
    DifferentialRule p = rr;
    p.source = {rr.source.s, rr.source.t + 1};
    p.provenance = Provenance::Imported;
    const int s = p.source.s, t = p.source.t, r = rr.r;
    if (rr.source.t < 1) {
      out.rejected.push_back({rr, "ring row t = " + std::to_string(rr.source.t) + " has no shifted pic row"});
      continue;
    }
    if (pic.dim(p.source) != rr.source_vec.size() ||
        (pic.window.contains(p.target()) && pic.dim(p.target()) != rr.target_vec.size())) {
      out.rejected.push_back({rr, "pic chart has no matching cell at " + bd(p.source)});
      continue;
    }
    if (2 <= r && r <= t - 1) {
      p.certificate = "2 <= r = " + std::to_string(r) + " <= t-1 = " + std::to_string(t - 1);
    } else if (t - s > 0 && s > 0) {
      p.certificate = "t-s = " + std::to_string(t - s) + " > 0, s = " + std::to_string(s) + " > 0";
    } else {
      std::string why = r < 2 ? "r = " + std::to_string(r) + " < 2" :
                                "r = " + std::to_string(r) + " > t-1 = " + std::to_string(t - 1);
      why += (t - s <= 0) ? " and t-s = " + std::to_string(t - s) + " <= 0" : " and s = 0";
      out.rejected.push_back({rr, why});
      continue;
    }
    out.imported.push_back(p);
  }
  return out;
}

CoefficientMaps coefficient_maps(const E2Chart& ring, const std::vector<DifferentialRule>& ring_rules,
                                 const Bidegree& ring_spot) {
  const int r = ring_spot.s;  // spot (t+1, t), first unstable page t+1
  const Bidegree tb = ring_spot + dr_offset(r);
  const Bidegree sq = ring_spot + ring_spot;
  if (tb != sq) throw DataError("spot " + bd(ring_spot) + " is not of the form (t+1, t)");
  const std::size_t n = ring.dim(ring_spot), m = ring.dim(tb);
  CoefficientMaps out{IntMatrix(m, n), IntMatrix(m, n)};
  for (const auto& rule : ring_rules) {
    if (rule.r != r || rule.source != ring_spot) continue;
    std::size_t hot = n, ones = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(rule.source_vec[i]) != 0) {
        hot = i;
        ++ones;
      }
    if (ones != 1 || rule.source_vec[hot] != 1) throw DataError("ring rule at the spot is not on a basis class");
    for (std::size_t j = 0; j < m; ++j) out.ring_d(j, hot) = rule.target_vec[j];
  }
  const auto& basis = ring.cells.at(ring_spot);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::vector<Int>> v;
    if (basis[i].mono && ring.algebra) {
      Poly p = ring.algebra->mul(Poly{{*basis[i].mono, 1}}, Poly{{*basis[i].mono, 1}});
      v = p.empty() ? std::vector<Int>(m) : ring.vector_of(p, sq);
    } else {
      auto it = ring.products.find({basis[i].label, basis[i].label});
      if (it != ring.products.end()) {
        auto f = ring.find(it->second);
        if (f && f->first == sq) {
          v = std::vector<Int>(m);
          (*v)[f->second] = 1;
        }
      }
    }
    if (!v) throw UnresolvableProduct("square of " + basis[i].label + " is not resolvable at " + bd(sq));
    for (std::size_t j = 0; j < m; ++j) out.square(j, i) = (*v)[j];
  }
  return out;
}

UnstableResult unstable_first_differential(const ChartPage& pic, const Bidegree& ring_spot, const IntMatrix& ring_d,
                                           const IntMatrix& square) {
  const int t = ring_spot.t;
  if (ring_spot.s != t + 1) throw DataError("spot " + bd(ring_spot) + " is not of the form (t+1, t)");
  const int r = t + 1;
  if (pic.r() != r) throw DataError("the unstable formula acts on page " + std::to_string(r));
  const Bidegree src{t + 1, t + 1};
  const Bidegree tgt = src + dr_offset(r);
  const E2Chart& e2 = pic.e2();
  const std::size_t n = e2.dim(src), m = e2.dim(tgt);
  if (ring_d.rows() != m || ring_d.cols() != n || square.rows() != m || square.cols() != n)
    throw DimensionMismatch("coefficient maps do not match the pic cells at " + bd(src) + " and " + bd(tgt));
  auto two = [](const std::vector<Int>& os) {
    for (const auto& o : os)
      if (o != 2) return false;
    return true;
  };
  if (!two(e2.orders(src)) || !two(e2.orders(tgt)) || !two(pic.group(src).factors()) ||
      !two(pic.group(tgt).factors()))
    throw NotCharTwo("coefficients at " + bd(src) + " or " + bd(tgt) + " are not 2-torsion");

  UnstableResult res;
  IntMatrix op(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int v = ring_d(i, j) + square(i, j);
      mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), 2);
      op(i, j) = v;
    }
  for (std::size_t j = 0; j < n; ++j) {
    DifferentialRule rule;
    rule.r = r;
    rule.source = src;
    rule.source_vec.assign(n, 0);
    rule.source_vec[j] = 1;
    rule.target_vec = op.column(j);
    rule.provenance = Provenance::Unstable;
    rule.source_label = e2.cells.at(src)[j].label;
    rule.target_label = e2.format(tgt, rule.target_vec);
    rule.certificate = "d(x) + x^2 at pic (" + std::to_string(t + 1) + "," + std::to_string(t + 1) + ")";
    res.rules.push_back(rule);
  }
  res.op = page_differential(pic, res.rules, src);
  const auto sf = pic.group(src).factors(), tf = pic.group(tgt).factors();
  res.kernel = exactalg::kernel(res.op, sf, tf);
  const std::size_t rank = exactalg::modp_rank(res.op, 2);
  res.image = FgAbGroup::from_factors(std::vector<Int>(rank, 2));
  return res;
}

}  // namespace picdesc::ssengine
