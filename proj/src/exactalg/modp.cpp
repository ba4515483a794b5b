#include "picdesc/exactalg/modp.hpp"

#include <algorithm>
#include <queue>

#include "picdesc/errors.hpp"

namespace picdesc::exactalg {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t modp_inverse(std::uint32_t a, std::uint32_t p) {
  long long r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

static std::uint32_t reduce_int(const Int& x, std::uint32_t p) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

ModpMatrix ModpMatrix::from_int(const IntMatrix& m, std::uint32_t p) {
  ModpMatrix a(m.rows(), m.cols(), p);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = reduce_int(m(i, j), p);
  return a;
}

std::size_t modp_rank(const IntMatrix& m, long p) {
  if (!is_prime(p) || p >= 65536) throw NotPrime(std::to_string(p) + " is not a supported prime");
  return ModpMatrix::from_int(m, static_cast<std::uint32_t>(p)).rank();
}

std::size_t ModpMatrix::rank() const {
  ModpMatrix a = *this;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < c_ && rk < r_; ++c) {
    std::size_t piv = r_;
    for (std::size_t i = rk; i < r_; ++i)
      if (a(i, c)) {
        piv = i;
        break;
      }
    if (piv == r_) continue;
    for (std::size_t j = 0; j < c_; ++j) std::swap(a(rk, j), a(piv, j));
    std::uint32_t inv = modp_inverse(a(rk, c), p_);
    for (std::size_t j = c; j < c_; ++j) a(rk, j) = static_cast<std::uint32_t>(1ull * a(rk, j) * inv % p_);
    for (std::size_t i = rk + 1; i < r_; ++i) {
      std::uint32_t f = a(i, c);
      if (!f) continue;
      for (std::size_t j = c; j < c_; ++j)
        a(i, j) = static_cast<std::uint32_t>((a(i, j) + 1ull * (p_ - f) * a(rk, j)) % p_);
    }
    ++rk;
  }
  return rk;
}

ModpMatrix ModpMatrix::kernel() const {
  // reduced row echelon form, then read off the free columns
  ModpMatrix a = *this;
  std::vector<std::size_t> pivcols;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < c_ && rk < r_; ++c) {
    std::size_t piv = r_;
    for (std::size_t i = rk; i < r_; ++i)
      if (a(i, c)) {
        piv = i;
        break;
      }
    if (piv == r_) continue;
    for (std::size_t j = 0; j < c_; ++j) std::swap(a(rk, j), a(piv, j));
    std::uint32_t inv = modp_inverse(a(rk, c), p_);
    for (std::size_t j = 0; j < c_; ++j) a(rk, j) = static_cast<std::uint32_t>(1ull * a(rk, j) * inv % p_);
    for (std::size_t i = 0; i < r_; ++i) {
      if (i == rk) continue;
      std::uint32_t f = a(i, c);
      if (!f) continue;
      for (std::size_t j = 0; j < c_; ++j)
        a(i, j) = static_cast<std::uint32_t>((a(i, j) + 1ull * (p_ - f) * a(rk, j)) % p_);
    }
    pivcols.push_back(c);
    ++rk;
  }
  std::vector<char> is_piv(c_, 0);
  for (auto c : pivcols) is_piv[c] = 1;
  std::vector<std::size_t> freecols;
  for (std::size_t c = 0; c < c_; ++c)
    if (!is_piv[c]) freecols.push_back(c);
  ModpMatrix k(c_, freecols.size(), p_);
  for (std::size_t f = 0; f < freecols.size(); ++f) {
    std::size_t fc = freecols[f];
    k(fc, f) = 1;
    for (std::size_t i = 0; i < pivcols.size(); ++i)
      k(pivcols[i], f) = a(i, fc) ? p_ - a(i, fc) : 0;
  }
  return k;
}

ModpMatrix ModpMatrix::operator*(const ModpMatrix& o) const {
  if (c_ != o.r_) throw DimensionMismatch("mod p product shape");
  ModpMatrix m(r_, o.c_, p_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      std::uint32_t x = (*this)(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < o.c_; ++j)
        if (o(k, j)) m(i, j) = static_cast<std::uint32_t>((m(i, j) + 1ull * x * o(k, j)) % p_);
    }
  return m;
}

ModpMatrix ModpMatrix::transpose() const {
  ModpMatrix t(c_, r_, p_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<std::uint32_t> ModpMatrix::column(std::size_t j) const {
  std::vector<std::uint32_t> v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

void ModpEchelon::reduce(std::vector<std::uint32_t>& v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    std::uint32_t f = v[lead_[k]];
    if (!f) continue;
    const auto& r = rows_[k];
    for (std::size_t j = lead_[k]; j < dim_; ++j)
      if (r[j]) v[j] = static_cast<std::uint32_t>((v[j] + 1ull * (p_ - f) * r[j]) % p_);
  }
}

bool ModpEchelon::insert(std::vector<std::uint32_t> v) {
  if (v.size() != dim_) throw DimensionMismatch("echelon vector length");
  reduce(v);
  std::size_t lead = dim_;
  for (std::size_t j = 0; j < dim_; ++j)
    if (v[j]) {
      lead = j;
      break;
    }
  if (lead == dim_) return false;
  std::uint32_t inv = modp_inverse(v[lead], p_);
  for (auto& x : v) x = static_cast<std::uint32_t>(1ull * x * inv % p_);
  // keep the basis fully reduced at the new lead column
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    std::uint32_t f = rows_[k][lead];
    if (!f) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (v[j]) rows_[k][j] = static_cast<std::uint32_t>((rows_[k][j] + 1ull * (p_ - f) * v[j]) % p_);
  }
  rows_.push_back(std::move(v));
  lead_.push_back(lead);
  return true;
}

bool ModpEchelon::contains(std::vector<std::uint32_t> v) const {
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

void SparseModpMatrix::add(std::size_t r, std::size_t c, long long v) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += p;
  if (m) rows[r].push_back({static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(m)});
}

std::size_t SparseModpMatrix::rank() const {
  using Row = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  std::vector<Row> rs(rows.size());
  std::vector<std::vector<std::uint32_t>> colrows(ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row r = rows[i];
    std::sort(r.begin(), r.end());
    Row out;
    for (auto& e : r) {
      if (!out.empty() && out.back().first == e.first)
        out.back().second = (out.back().second + e.second) % p;
      else
        out.push_back(e);
      if (out.back().second == 0) out.pop_back();
    }
    for (auto& e : out) colrows[e.first].push_back(static_cast<std::uint32_t>(i));
    rs[i] = std::move(out);
  }
  std::vector<char> alive(rs.size(), 1);
  auto find = [&](std::uint32_t r, std::uint32_t c) -> std::uint32_t {
    const Row& row = rs[r];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, 0u));
    return (it != row.end() && it->first == c) ? it->second : 0;
  };
  auto colcount = [&](std::uint32_t c) {
    auto& v = colrows[c];
    std::size_t k = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (alive[v[i]] && find(v[i], c)) v[k++] = v[i];
    v.resize(k);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v.size();
  };
  using Item = std::pair<std::size_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (std::uint32_t i = 0; i < rs.size(); ++i)
    if (!rs[i].empty()) heap.push({rs[i].size(), i});
  std::size_t rk = 0;
  while (!heap.empty()) {
    auto [len, r] = heap.top();
    heap.pop();
    if (!alive[r] || rs[r].empty()) continue;
    if (len != rs[r].size()) {
      heap.push({rs[r].size(), r});
      continue;
    }
    std::uint32_t bc = 0;
    std::size_t best = SIZE_MAX;
    for (auto& e : rs[r]) {
      std::size_t cc = colcount(e.first);
      if (cc < best) best = cc, bc = e.first;
    }
    std::uint32_t inv = modp_inverse(find(r, bc), p);
    std::vector<std::uint32_t> others = colrows[bc];
    alive[r] = 0;
    ++rk;
    for (std::uint32_t i : others) {
      if (i == r || !alive[i]) continue;
      std::uint32_t f = static_cast<std::uint32_t>(1ull * find(i, bc) * inv % p);
      if (!f) continue;
      const Row& a = rs[i];
      const Row& b = rs[r];
      Row out;
      out.reserve(a.size() + b.size());
      std::size_t x = 0, y = 0;
      while (x < a.size() || y < b.size()) {
        if (y == b.size() || (x < a.size() && a[x].first < b[y].first)) {
          out.push_back(a[x++]);
        } else if (x == a.size() || b[y].first < a[x].first) {
          out.push_back({b[y].first, static_cast<std::uint32_t>(1ull * (p - f) * b[y].second % p)});
          colrows[b[y].first].push_back(i);
          ++y;
        } else {
          std::uint32_t v = static_cast<std::uint32_t>((a[x].second + 1ull * (p - f) * b[y].second) % p);
          if (v) out.push_back({a[x].first, v});
          ++x;
          ++y;
        }
      }
      rs[i].swap(out);
      if (!rs[i].empty()) heap.push({rs[i].size(), i});
    }
    rs[r].clear();
  }
  return rk;
}

}  // namespace picdesc::exactalg
