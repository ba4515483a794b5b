#include "picdesc/ssengine/algebra.hpp"

#include <cctype>
#include <functional>

#include "picdesc/errors.hpp"

namespace picdesc::ssengine {

namespace {

Int gcd0(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

std::size_t Algebra::index(const std::string& name) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return i;
  throw DataError("unknown generator '" + name + "'");
}

Monomial Algebra::unit(std::size_t g, int e) const {
  Monomial m = one();
  m[g] = e;
  return m;
}

Bidegree Algebra::degree(const Monomial& m) const {
  Bidegree b;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    b.s += m[i] * gens[i].s;
    b.t += m[i] * gens[i].t;
  }
  return b;
}

bool Algebra::divides(const Monomial& d, const Monomial& m) const {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > 0 && m[i] < d[i]) return false;
  return true;
}

Int Algebra::order(const Monomial& m) const {
  Int o = base_order;
  for (const auto& r : order_rules)
    if (divides(r.pattern, m)) o = gcd0(o, r.order);
  return o;
}

bool Algebra::in_range(const Monomial& m) const {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Generator& g = gens[i];
    if (g.coefficient) {
      if (m[i] > truncation || m[i] < (g.laurent ? -truncation : 0)) return false;
    } else if (!g.invertible && m[i] < 0) {
      throw DataError("negative power of the non-invertible generator " + g.name);
    }
  }
  return true;
}

bool Algebra::is_normal(const Monomial& m) const {
  if (!in_range(m) || order(m) == 1) return false;
  for (const auto& r : rewrites)
    if (divides(r.lhs, m)) return false;
  return true;
}

int Algebra::swap_sign(const Monomial& x, const Monomial& y) const {
  long par = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if ((gens[i].t - gens[i].s) % 2 == 0 || x[i] == 0) continue;
    for (std::size_t k = 0; k < i; ++k)
      if ((gens[k].t - gens[k].s) % 2 != 0) par += static_cast<long>(x[i]) * y[k];
  }
  return (par % 2 == 0) ? 1 : -1;
}

Poly Algebra::reduce_coefficients(Poly p) const {
  Poly out;
  for (auto& [m, c] : p) {
    if (sgn(c) == 0 || !in_range(m)) continue;
    Int o = order(m);
    if (o == 1) continue;
    Int v = c;
    if (sgn(o) != 0) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), o.get_mpz_t());
    if (sgn(v) != 0) out[m] = v;
  }
  return out;
}

Poly Algebra::rewrite_once(const Poly& p, bool last_rule_first, bool& changed) const {
  Poly out;
  for (const auto& [m, c] : p) {
    const Rewrite* hit = nullptr;
    for (const auto& r : rewrites)
      if (divides(r.lhs, m)) {
        hit = &r;
        if (!last_rule_first) break;
      }
    if (!hit) {
      out[m] += c;
      continue;
    }
    changed = true;
    Monomial rest(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) rest[i] = m[i] - hit->lhs[i];
    const int s0 = swap_sign(hit->lhs, rest);
    for (const auto& [rm, rc] : hit->rhs) {
      Monomial prod(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) prod[i] = rm[i] + rest[i];
      out[prod] += c * rc * (s0 * swap_sign(rm, rest));
    }
  }
  return reduce_coefficients(std::move(out));
}

Poly Algebra::normalize(const Poly& p, bool last_rule_first) const {
  Poly cur = reduce_coefficients(p);
  for (int it = 0; it < 10000; ++it) {
    bool changed = false;
    cur = rewrite_once(cur, last_rule_first, changed);
    if (!changed) return cur;
  }
  throw NonConfluentRelations("rewriting does not terminate");
}

Poly Algebra::mul(const Poly& x, const Poly& y) const {
  Poly out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      Monomial m(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
      out[m] += ca * cb * swap_sign(a, b);
    }
  return normalize(out);
}

std::string Algebra::label(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (m[i] == 0) continue;
    s += gens[i].name;
    if (m[i] != 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

Monomial Algebra::parse_monomial(const std::string& text) const {
  Poly p = parse(text);
  if (p.size() != 1 || p.begin()->second != 1) throw DataError("'" + text + "' is not a monomial");
  return p.begin()->first;
}

Poly Algebra::parse(const std::string& text) const {
  // split into signed terms; a '-' right after '^' is part of an exponent
  std::vector<std::pair<int, std::string>> terms;
  int sign = 1;
  std::string cur;
  char prev = 0;
  for (char ch : text) {
    if ((ch == '+' || ch == '-') && prev != '^') {
      if (!trim(cur).empty()) terms.push_back({sign, trim(cur)});
      cur.clear();
      sign = ch == '-' ? -1 : 1;
    } else {
      cur += ch;
    }
    if (ch != ' ') prev = ch;
  }
  if (!trim(cur).empty()) terms.push_back({sign, trim(cur)});

  Poly out;
  for (const auto& [sg, term] : terms) {
    std::size_t i = 0;
    Int coeff = 1;
    std::size_t j = 0;
    while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j]))) ++j;
    if (j > 0) {
      coeff = Int(term.substr(0, j));
      i = j;
    }
    Monomial m = one();
    while (i < term.size()) {
      if (term[i] == ' ' || term[i] == '*') {
        ++i;
        continue;
      }
      std::size_t best = gens.size(), len = 0;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const std::string& n = gens[g].name;
        if (n.size() > len && term.compare(i, n.size(), n) == 0) {
          best = g;
          len = n.size();
        }
      }
      if (best == gens.size()) throw DataError("cannot parse '" + term + "' at '" + term.substr(i) + "'");
      i += len;
      int e = 1;
      if (i < term.size() && term[i] == '^') {
        std::size_t k = i + 1;
        if (k < term.size() && term[k] == '-') ++k;
        std::size_t d = k;
        while (d < term.size() && std::isdigit(static_cast<unsigned char>(term[d]))) ++d;
        if (d == k) throw DataError("bad exponent in '" + term + "'");
        e = std::stoi(term.substr(i + 1, d - i - 1));
        i = d;
      }
      m[best] += e;
    }
    out[m] += coeff * sg;
  }
  return normalize(out);
}

std::string Algebra::format(const Poly& p) const {
  if (p.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c0] : p) {
    Int c = c0;
    Int o = order(m);
    if (sgn(o) > 0 && 2 * c > o) c -= o;
    const bool neg = sgn(c) < 0;
    if (neg) c = -c;
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string lab = label(m);
    if (c != 1) s += c.get_str() + (lab == "1" ? "" : lab);
    else s += lab;
    first = false;
  }
  return s;
}

std::vector<Monomial> Algebra::box(int s_max) const {
  std::vector<Monomial> out;
  Monomial cur = one();
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int s) {
    if (i == gens.size()) {
      out.push_back(cur);
      return;
    }
    const Generator& g = gens[i];
    int lo = g.lo, hi = g.hi;
    if (g.coefficient) {
      lo = g.laurent ? -truncation : 0;
      hi = truncation;
    } else if (g.s > 0) {
      lo = 0;
      hi = (s_max - s) / g.s;
    }
    for (int e = lo; e <= hi; ++e) {
      if (s + e * g.s > s_max) break;
      cur[i] = e;
      rec(i + 1, s + e * g.s);
    }
    cur[i] = 0;
  };
  rec(0, 0);
  return out;
}

bool Algebra::in_box(const Monomial& m, int s_max) const {
  int s = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Generator& g = gens[i];
    if (g.coefficient) {
      if (m[i] > truncation || m[i] < (g.laurent ? -truncation : 0)) return false;
    } else if (g.s > 0) {
      if (m[i] < 0) return false;
    } else if (m[i] < g.lo || m[i] > g.hi) {
      return false;
    }
    s += m[i] * g.s;
  }
  return s <= s_max;
}

std::vector<Monomial> Algebra::enumerate(const Window& w) const {
  std::vector<Monomial> out;
  for (const auto& m : box(w.s_max))
    if (w.contains(degree(m)) && is_normal(m)) out.push_back(m);
  return out;
}

void Algebra::check_confluence(const Window& w) const {
  for (std::size_t i = 0; i < rewrites.size(); ++i)
    for (std::size_t j = i + 1; j < rewrites.size(); ++j) {
      bool overlap = false;
      Monomial l(gens.size());
      for (std::size_t k = 0; k < gens.size(); ++k) {
        l[k] = std::max(rewrites[i].lhs[k], rewrites[j].lhs[k]);
        overlap = overlap || (rewrites[i].lhs[k] > 0 && rewrites[j].lhs[k] > 0);
      }
      if (!overlap || !in_range(l)) continue;
      auto via = [&](const Rewrite& r) {
        Monomial rest(l.size());
        for (std::size_t k = 0; k < l.size(); ++k) rest[k] = l[k] - r.lhs[k];
        Poly p = mul(r.rhs, Poly{{rest, 1}});
        // mul applies the sign of rhs * rest; l itself equals swap_sign(lhs, rest) * lhs * rest
        for (auto& [m, c] : p) c *= swap_sign(r.lhs, rest);
        return normalize(p);
      };
      Poly a = via(rewrites[i]), b = via(rewrites[j]);
      if (a != b)
        throw NonConfluentRelations("critical pair at " + label(l) + " resolves to " + format(a) + " and " +
                                    format(b));
    }
  for (const auto& m : box(w.s_max)) {
    if (!w.contains(degree(m))) continue;
    Poly a = normalize(Poly{{m, 1}}, false), b = normalize(Poly{{m, 1}}, true);
    if (a != b)
      throw NonConfluentRelations(label(m) + " normalizes to " + format(a) + " or " + format(b));
  }
}

}  // namespace picdesc::ssengine
