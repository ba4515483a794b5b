#include "picdesc/cech/cech.hpp"

#include <numeric>

#include "picdesc/errors.hpp"
#include "picdesc/exactalg/complex.hpp"

namespace picdesc::cech {

using exactalg::Int;
using exactalg::IntMatrix;

namespace {

std::vector<std::string> variable_names(const GradedCechProblem& p) {
  if (!p.names.empty()) {
    if (p.names.size() != p.degrees.size()) throw DataError("one name per variable");
    return p.names;
  }
  const char* dflt[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < p.degrees.size(); ++i)
    out.push_back(p.degrees.size() <= 4 ? dflt[i] : "a" + std::to_string(i + 1));
  return out;
}

std::string monomial(const std::vector<long>& e, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    s += names[i];
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

// exponent vectors with sign pattern: e_i >= 0 if !neg, e_i <= -1 if neg, Σ d_i e_i = target
void enumerate(const std::vector<int>& d, const std::vector<bool>& neg, long target, std::size_t i,
               std::vector<long>& cur, std::vector<std::vector<long>>& out) {
  if (i == d.size()) {
    if (target == 0) out.push_back(cur);
    return;
  }
  if (!neg[i]) {
    for (long e = 0; e * d[i] <= target; ++e) {
      cur[i] = e;
      enumerate(d, neg, target - e * d[i], i + 1, cur, out);
    }
  } else {
    for (long e = -1; e * d[i] >= target; --e) {
      cur[i] = e;
      enumerate(d, neg, target - e * d[i], i + 1, cur, out);
    }
  }
}

}  // namespace

std::vector<FgAbGroup> pattern_cohomology(std::size_t n, const std::vector<std::size_t>& negative) {
  std::uint32_t need = 0;
  for (auto i : negative) need |= 1u << i;
  // terms: subsets I ⊇ N of {0..n-1}, graded by |I|-1
  std::vector<std::vector<std::uint32_t>> terms(n);
  for (std::uint32_t I = 1; I < (1u << n); ++I)
    if ((I & need) == need) terms[__builtin_popcount(I) - 1].push_back(I);
  exactalg::CochainComplex cx;
  for (std::size_t k = 0; k < n; ++k) cx.orders.emplace_back(terms[k].size(), 0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    IntMatrix m(terms[k + 1].size(), terms[k].size());
    for (std::size_t r = 0; r < terms[k + 1].size(); ++r) {
      std::uint32_t J = terms[k + 1][r];
      int pos = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(J >> j & 1)) continue;
        std::uint32_t I = J & ~(1u << j);
        for (std::size_t c = 0; c < terms[k].size(); ++c)
          if (terms[k][c] == I) m(r, c) = (pos % 2 == 0) ? 1 : -1;
        ++pos;
      }
    }
    cx.d.push_back(m);
  }
  cx.validate();
  std::vector<FgAbGroup> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(cx.cohomology(static_cast<int>(k)));
  return out;
}

std::size_t ring_piece_rank(const std::vector<int>& degrees, int degree) {
  if (degree < 0) return 0;
  std::vector<std::size_t> ways(degree + 1, 0);
  ways[0] = 1;
  for (int d : degrees)
    for (int m = d; m <= degree; ++m) ways[m] += ways[m - d];
  return ways[degree];
}

CechResult cech_graded(const GradedCechProblem& p) {
  const std::size_t n = p.degrees.size();
  if (n < 2 || n > 16) throw DataError("need between 2 and 16 variables");
  if (p.lo > p.hi) throw DataError("empty degree window");
  if (p.shifts.empty()) throw DataError("module has no summands");
  for (int d : p.degrees) {
    if (d == 0) throw WindowUnbounded("a degree-0 variable makes every graded piece infinite");
    if (d < 0) throw DataError("variable degrees must be positive");
  }
  const auto names = variable_names(p);
  const int g = std::accumulate(p.degrees.begin(), p.degrees.end(), 0, [](int a, int b) { return std::gcd(a, b); });

  // cohomology per sign pattern, by bitmask
  std::vector<std::vector<FgAbGroup>> pat(1u << n);
  for (std::uint32_t N = 0; N < (1u << n); ++N) {
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < n; ++i)
      if (N >> i & 1) neg.push_back(i);
    pat[N] = pattern_cohomology(n, neg);
  }

  CechResult res;
  res.n = n;
  for (int m = p.lo; m <= p.hi; ++m) {
    std::vector<std::vector<Int>> factors(n);
    std::vector<std::vector<std::string>> labels(n);
    for (int s : p.shifts) {
      const long target = static_cast<long>(m) + s;
      const std::string tag = p.shifts.size() > 1 ? "[" + std::to_string(s) + "]" : "";
      for (std::uint32_t N = 0; N < (1u << n); ++N) {
        bool acyclic = true;
        for (const auto& h : pat[N]) acyclic = acyclic && h.is_trivial();
        if (acyclic) continue;
        std::vector<bool> neg(n);
        for (std::size_t i = 0; i < n; ++i) neg[i] = N >> i & 1;
        const bool mixed = N != 0 && N != (1u << n) - 1;
        if (mixed) {
          // with positive degrees on both sides a single solution gives infinitely many
          long c = target;
          for (std::size_t i = 0; i < n; ++i)
            if (neg[i]) c += p.degrees[i];
          if (c % g == 0)
            throw WindowUnbounded("multidegrees with sign pattern " + std::to_string(N) +
                                  " contribute infinitely often in degree " + std::to_string(m));
          continue;
        }
        std::vector<std::vector<long>> monos;
        std::vector<long> cur(n, 0);
        enumerate(p.degrees, neg, target, 0, cur, monos);
        for (std::size_t k = 0; k < n; ++k)
          for (const auto& e : monos)
            for (std::size_t f = 0; f < pat[N][k].ngens(); ++f) {
              factors[k].push_back(pat[N][k].factors()[f]);
              labels[k].push_back(monomial(e, names) + tag);
            }
      }
    }
    std::vector<FgAbGroup> hs;
    for (std::size_t k = 0; k < n; ++k) hs.push_back(FgAbGroup::from_factors(factors[k], labels[k]));
    for (std::size_t k = 1; k + 1 < n; ++k)
      if (!hs[k].is_trivial())
        throw HypothesisFailed("H^" + std::to_string(k) + " is nonzero in degree " + std::to_string(m));
    res.h[m] = std::move(hs);
  }
  return res;
}

}  // namespace picdesc::cech
