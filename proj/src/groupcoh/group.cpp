#include "picdesc/groupcoh/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "picdesc/errors.hpp"

namespace picdesc::groupcoh {

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table, std::vector<std::size_t> gens,
                         std::vector<std::string> gen_names, std::string name)
    : table_(std::move(table)), gens_(std::move(gens)), gen_names_(std::move(gen_names)), name_(std::move(name)) {
  const std::size_t n = table_.size();
  if (n == 0) throw DataError("empty group table");
  if (gen_names_.size() != gens_.size()) throw DataError("generator names do not match generators");
  identity_ = n;
  for (std::size_t e = 0; e < n && identity_ == n; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = table_[e][g] == g && table_[g][e] == g;
    if (ok) identity_ = e;
  }
  if (identity_ == n) throw DataError("table has no identity");
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == identity_) inverse_[a] = b;
  for (auto v : inverse_)
    if (v == n) throw DataError("table has an element without inverse");

  parent_.assign(n, n);
  parent_gen_.assign(n, 0);
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> q{identity_};
  seen[identity_] = 1;
  parent_[identity_] = identity_;
  while (!q.empty()) {
    std::size_t g = q.front();
    q.pop_front();
    bfs_.push_back(g);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      std::size_t h = table_[g][gens_[i]];
      if (!seen[h]) {
        seen[h] = 1;
        parent_[h] = g;
        parent_gen_[h] = i;
        q.push_back(h);
      }
    }
  }
  if (bfs_.size() != n) throw DataError("generators do not generate the group");
}

std::size_t FiniteGroup::power(std::size_t a, long k) const {
  if (k < 0) {
    a = inverse_[a];
    k = -k;
  }
  std::size_t r = identity_;
  for (long i = 0; i < k; ++i) r = table_[r][a];
  return r;
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1, x = a;
  while (x != identity_) {
    x = table_[x][a];
    ++k;
  }
  return k;
}

std::size_t FiniteGroup::generator_index(const std::string& n) const {
  for (std::size_t i = 0; i < gen_names_.size(); ++i)
    if (gen_names_[i] == n) return i;
  throw DataError("unknown generator " + n);
}

std::vector<std::size_t> FiniteGroup::word(std::size_t g) const {
  std::vector<std::size_t> w;
  while (g != identity_) {
    w.push_back(parent_gen_[g]);
    g = parent_[g];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::optional<std::size_t> FiniteGroup::cyclic_generator() const {
  for (std::size_t g = 0; g < order(); ++g)
    if (element_order(g) == order()) return g;
  return std::nullopt;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < order(); ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

std::vector<std::size_t> FiniteGroup::subgroup(const std::vector<std::size_t>& gens) const {
  std::set<std::size_t> s{identity_};
  std::vector<std::size_t> frontier{identity_};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto x : frontier)
      for (auto g : gens) {
        std::size_t y = table_[x][g];
        if (s.insert(y).second) next.push_back(y);
      }
    frontier.swap(next);
  }
  return {s.begin(), s.end()};
}

namespace {

Mat2 mat_mul(const Mat2& a, const Mat2& b, long n) {
  auto md = [n](long x) { return ((x % n) + n) % n; };
  return {md(a[0] * b[0] + a[1] * b[2]), md(a[0] * b[1] + a[1] * b[3]), md(a[2] * b[0] + a[3] * b[2]),
          md(a[2] * b[1] + a[3] * b[3])};
}

Mat2 reduce(const Mat2& a, long n) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r[i] = ((a[i] % n) + n) % n;
  return r;
}

std::vector<std::string> names_of(const std::vector<std::pair<std::string, Mat2>>& gens) {
  std::vector<std::string> v;
  for (const auto& g : gens) v.push_back(g.first);
  return v;
}

}  // namespace

FiniteMatrixGroup::Closure FiniteMatrixGroup::close(long n, const std::vector<std::pair<std::string, Mat2>>& gens) {
  if (n < 2) throw DataError("modulus must be at least 2");
  std::vector<Mat2> mats;
  std::vector<std::size_t> gidx;
  std::map<Mat2, std::size_t> index;
  auto add = [&](const Mat2& m) {
    auto it = index.find(m);
    if (it != index.end()) return it->second;
    std::size_t k = mats.size();
    index[m] = k;
    mats.push_back(m);
    return k;
  };
  add(Mat2{1, 0, 0, 1});
  for (const auto& [name, m] : gens) {
    Mat2 r = reduce(m, n);
    long det = ((r[0] * r[3] - r[1] * r[2]) % n + n) % n;
    if (std::gcd(det, n) != 1) throw DataError("generator " + name + " is not invertible mod " + std::to_string(n));
    gidx.push_back(add(r));
  }
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (auto g : gidx) add(mat_mul(mats[i], mats[g], n));
  const std::size_t N = mats.size();
  std::vector<std::vector<std::size_t>> table(N, std::vector<std::size_t>(N));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) table[a][b] = index.at(mat_mul(mats[a], mats[b], n));
  return {std::move(mats), std::move(table), std::move(gidx)};
}

FiniteMatrixGroup::FiniteMatrixGroup(long modulus, const std::vector<std::pair<std::string, Mat2>>& gens,
                                     std::string name)
    : FiniteMatrixGroup(modulus, close(modulus, gens), names_of(gens), std::move(name)) {}

FiniteMatrixGroup::FiniteMatrixGroup(long modulus, Closure c, std::vector<std::string> names, std::string name)
    : FiniteGroup(std::move(std::get<1>(c)), std::move(std::get<2>(c)), std::move(names), std::move(name)),
      modulus_(modulus),
      mats_(std::move(std::get<0>(c))) {}

std::size_t FiniteMatrixGroup::find(const Mat2& m) const {
  Mat2 r = reduce(m, modulus_);
  for (std::size_t i = 0; i < mats_.size(); ++i)
    if (mats_[i] == r) return i;
  throw DataError("matrix " + mat2_string(r) + " is not in the group");
}

std::string mat2_string(const Mat2& m) {
  return "[[" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "],[" + std::to_string(m[2]) + "," +
         std::to_string(m[3]) + "]]";
}

}  // namespace picdesc::groupcoh
