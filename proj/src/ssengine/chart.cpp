#include "picdesc/ssengine/chart.hpp"

#include <set>

#include "picdesc/errors.hpp"

namespace picdesc::ssengine {

namespace {

std::string bd(const Bidegree& b) { return "(" + std::to_string(b.s) + "," + std::to_string(b.t) + ")"; }

bool zero_mod(const std::vector<Int>& v, const std::vector<Int>& orders) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(orders[i]) == 0) {
      if (sgn(v[i]) != 0) return false;
    } else if (!mpz_divisible_p(v[i].get_mpz_t(), orders[i].get_mpz_t())) {
      return false;
    }
  }
  return true;
}

bool equal_mod(const std::vector<Int>& a, const std::vector<Int>& b, const std::vector<Int>& orders) {
  std::vector<Int> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return zero_mod(d, orders);
}

}  // namespace

std::size_t E2Chart::dim(const Bidegree& b) const {
  auto it = cells.find(b);
  return it == cells.end() ? 0 : it->second.size();
}

std::vector<Int> E2Chart::orders(const Bidegree& b) const {
  std::vector<Int> out;
  auto it = cells.find(b);
  if (it != cells.end())
    for (const auto& c : it->second) out.push_back(c.order);
  return out;
}

std::optional<std::pair<Bidegree, std::size_t>> E2Chart::find(const std::string& label) const {
  for (const auto& [b, basis] : cells)
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].label == label) return std::make_pair(b, i);
  return std::nullopt;
}

std::optional<std::vector<Int>> E2Chart::vector_of(const Poly& p, const Bidegree& b) const {
  std::vector<Int> v(dim(b));
  auto it = cells.find(b);
  for (const auto& [m, c] : p) {
    if (!algebra || algebra->degree(m) != b) return std::nullopt;
    if (it == cells.end()) return std::nullopt;
    bool hit = false;
    for (std::size_t i = 0; i < it->second.size(); ++i)
      if (it->second[i].mono && *it->second[i].mono == m) {
        v[i] += c;
        hit = true;
        break;
      }
    if (!hit) return std::nullopt;
  }
  return v;
}

std::string E2Chart::format(const Bidegree& b, const std::vector<Int>& v) const {
  auto it = cells.find(b);
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int c = v[i];
    const Int& o = it->second[i].order;
    if (sgn(o) > 0) {
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), o.get_mpz_t());
      if (2 * c > o) c -= o;
    }
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (!s.empty()) s += neg ? " - " : " + ";
    else if (neg) s += "-";
    if (c != 1) s += c.get_str();
    s += it->second[i].label;
  }
  return s.empty() ? "0" : s;
}

void E2Chart::validate() const {
  std::set<std::string> seen;
  for (const auto& [b, basis] : cells) {
    if (!window.contains(b)) throw DataError(name + ": cell " + bd(b) + " lies outside the window");
    for (const auto& c : basis)
      if (!seen.insert(c.label).second) throw DataError(name + ": duplicate basis label " + c.label);
  }
  for (const auto& [pair, prod] : products) {
    auto x = find(pair.first), y = find(pair.second), z = find(prod);
    if (!x || !y || !z) throw DataError(name + ": product " + pair.first + "·" + pair.second + " names unknown classes");
    if (x->first + y->first != z->first)
      throw DataError(name + ": product " + pair.first + "·" + pair.second + " breaks the bidegree law");
  }
}

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Supplied: return "supplied-dataset";
    case Provenance::Imported: return "imported-comparison";
    case Provenance::Unstable: return "unstable-formula";
    case Provenance::Leibniz: return "leibniz-derived";
  }
  return "?";
}

Provenance provenance_from(const std::string& s) {
  for (auto p : {Provenance::Supplied, Provenance::Imported, Provenance::Unstable, Provenance::Leibniz})
    if (provenance_name(p) == s) return p;
  throw DataError("unknown provenance '" + s + "'");
}

std::shared_ptr<const ChartPage> ChartPage::initial(std::shared_ptr<const E2Chart> e2) {
  auto p = std::make_shared<ChartPage>();
  p->r_ = 2;
  p->e2_ = e2;
  for (const auto& [b, basis] : e2->cells) {
    if (basis.empty()) continue;
    const std::size_t n = basis.size();
    FgAbGroup g = exactalg::homology(IntMatrix(n, 0), IntMatrix(0, n), e2->orders(b), {});
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < g.ngens(); ++k) labels.push_back(e2->format(b, g.generator(k)));
    g.set_labels(labels);
    p->cells_[b] = g;
  }
  return p;
}

FgAbGroup ChartPage::group(const Bidegree& b) const {
  auto it = cells_.find(b);
  return it == cells_.end() ? FgAbGroup() : it->second;
}

std::optional<std::vector<Int>> ChartPage::coordinates(const Bidegree& b, const std::vector<Int>& v) const {
  auto it = cells_.find(b);
  if (it == cells_.end()) {
    if (!zero_mod(v, e2_->orders(b))) return std::nullopt;
    return std::vector<Int>{};
  }
  if (!prev_) return it->second.try_coordinates(v);
  auto w = prev_->coordinates(b, v);
  if (!w) return std::nullopt;
  return it->second.try_coordinates(*w);
}

std::vector<Int> ChartPage::representative(const Bidegree& b, std::size_t k) const {
  const FgAbGroup& g = cells_.at(b);
  std::vector<Int> c = g.generator(k);
  if (!prev_) return c;
  std::vector<Int> out(e2_->dim(b));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    auto rep = prev_->representative(b, i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += c[i] * rep[j];
  }
  return out;
}

IntMatrix page_differential(const ChartPage& p, const std::vector<DifferentialRule>& rules, const Bidegree& b) {
  const Bidegree tb = b + dr_offset(p.r());
  const FgAbGroup src = p.group(b), tgt = p.group(tb);
  IntMatrix d(tgt.ngens(), src.ngens());
  if (src.ngens() == 0 || !p.e2().window.contains(tb)) return d;
  const std::size_t n = p.e2().dim(b), m = p.e2().dim(tb);
  const auto src_orders = p.e2().orders(b);
  std::vector<const DifferentialRule*> here;
  for (const auto& r : rules)
    if (r.r == p.r() && r.source == b) here.push_back(&r);
  if (here.empty()) return d;
  for (std::size_t k = 0; k < src.ngens(); ++k) {
    std::vector<Int> v = p.representative(b, k);
    std::vector<Int> w(m);
    const DifferentialRule* exact = nullptr;
    for (auto* r : here)
      if (equal_mod(r->source_vec, v, src_orders)) exact = r;
    if (exact) {
      w = exact->target_vec;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (sgn(v[i]) == 0) continue;
        for (auto* r : here) {
          bool unit = true;
          for (std::size_t j = 0; j < n; ++j) unit = unit && (r->source_vec[j] == (j == i ? 1 : 0));
          if (!unit) continue;
          for (std::size_t j = 0; j < m; ++j) w[j] += v[i] * r->target_vec[j];
          break;
        }
      }
    }
    auto c = p.coordinates(tb, w);
    if (!c)
      throw RuleNotClosed("d" + std::to_string(p.r()) + " of " + p.e2().format(b, v) + " at " + bd(b) +
                          " is not a class on page " + std::to_string(p.r()));
    for (std::size_t i = 0; i < c->size(); ++i) d(i, k) = (*c)[i];
  }
  return d;
}

PagePtr turn_page(const PagePtr& p, const std::vector<DifferentialRule>& rules) {
  const int r = p->r();
  const E2Chart& e2 = p->e2();
  for (const auto& rule : rules) {
    if (rule.r != r) continue;
    if (rule.source_vec.size() != e2.dim(rule.source))
      throw RuleNotClosed("rule source at " + bd(rule.source) + " has the wrong length");
    if (e2.window.contains(rule.target()) && rule.target_vec.size() != e2.dim(rule.target()))
      throw RuleNotClosed("rule target at " + bd(rule.target()) + " has the wrong length");
  }
  std::map<Bidegree, IntMatrix> d;
  for (const auto& [b, g] : p->cells()) d.emplace(b, page_differential(*p, rules, b));

  auto factors = [&](const Bidegree& b) { return p->group(b).factors(); };
  for (const auto& [b, m] : d) {
    auto it = d.find(b + dr_offset(r));
    if (it == d.end() || m.cols() == 0 || it->second.rows() == 0) continue;
    IntMatrix dd = it->second * m;
    exactalg::reduce_rows(dd, factors(b + dr_offset(r) + dr_offset(r)));
    if (!dd.is_zero()) throw RuleNotClosed("d" + std::to_string(r) + "∘d" + std::to_string(r) + " ≠ 0 from " + bd(b));
  }

  auto next = std::make_shared<ChartPage>();
  next->r_ = r + 1;
  next->e2_ = p->e2_ptr();
  next->prev_ = p;
  for (const auto& [b, g] : p->cells()) {
    const Bidegree from = b - dr_offset(r), to = b + dr_offset(r);
    IntMatrix in = d.count(from) ? d.at(from) : IntMatrix(g.ngens(), 0);
    IntMatrix out = d.at(b);
    next->cells_[b] = exactalg::homology(in, out, g.factors(), factors(to));
  }
  for (auto& [b, g] : next->cells_) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < g.ngens(); ++k) labels.push_back(e2.format(b, next->representative(b, k)));
    g.set_labels(labels);
  }
  return next;
}

PagePtr run_pages(PagePtr p, const std::vector<DifferentialRule>& rules, int last) {
  while (p->r() <= last) p = turn_page(p, rules);
  return p;
}

}  // namespace picdesc::ssengine
