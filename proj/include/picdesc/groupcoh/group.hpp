#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "picdesc/exactalg/matrix.hpp"

namespace picdesc::groupcoh {

using exactalg::Int;
using exactalg::IntMatrix;

// Finite group given by its multiplication table, with a chosen generating list.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  FiniteGroup(std::vector<std::vector<std::size_t>> table, std::vector<std::size_t> gens,
              std::vector<std::string> gen_names, std::string name = "");

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t power(std::size_t a, long k) const;
  std::size_t element_order(std::size_t a) const;
  const std::string& name() const { return name_; }

  const std::vector<std::size_t>& generators() const { return gens_; }
  const std::vector<std::string>& generator_names() const { return gen_names_; }
  std::size_t generator_index(const std::string& n) const;

  // Spanning tree of the right Cayley graph from the identity:
  // element g != e is reached as parent(g) * generator(parent_gen(g)).
  std::size_t tree_parent(std::size_t g) const { return parent_[g]; }
  std::size_t tree_generator(std::size_t g) const { return parent_gen_[g]; }
  // Elements in breadth-first order (identity first).
  const std::vector<std::size_t>& bfs_order() const { return bfs_; }
  // Word in generator indices expressing g.
  std::vector<std::size_t> word(std::size_t g) const;

  // Element generating the whole group, if cyclic.
  std::optional<std::size_t> cyclic_generator() const;
  bool is_abelian() const;

  std::vector<std::size_t> subgroup(const std::vector<std::size_t>& gens) const;

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> gens_;
  std::vector<std::string> gen_names_;
  std::vector<std::size_t> parent_, parent_gen_, bfs_;
  std::size_t identity_ = 0;
  std::string name_;
};

using Mat2 = std::array<long, 4>;  // row-major 2x2 over ℤ/n

// Closure of 2x2 matrices over ℤ/n.
class FiniteMatrixGroup : public FiniteGroup {
 public:
  FiniteMatrixGroup(long modulus, const std::vector<std::pair<std::string, Mat2>>& gens, std::string name = "");
  long modulus() const { return modulus_; }
  const Mat2& matrix(std::size_t g) const { return mats_[g]; }
  std::size_t find(const Mat2& m) const;

 private:
  using Closure = std::tuple<std::vector<Mat2>, std::vector<std::vector<std::size_t>>, std::vector<std::size_t>>;
  static Closure close(long modulus, const std::vector<std::pair<std::string, Mat2>>& gens);
  FiniteMatrixGroup(long modulus, Closure c, std::vector<std::string> names, std::string name);
  long modulus_;
  std::vector<Mat2> mats_;
};

std::string mat2_string(const Mat2& m);

}  // namespace picdesc::groupcoh
