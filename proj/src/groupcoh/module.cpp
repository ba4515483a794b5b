#include "picdesc/groupcoh/module.hpp"

#include "picdesc/errors.hpp"

namespace picdesc::groupcoh {

IntMatrix reduce_mod(IntMatrix a, const std::vector<Int>& orders) {
  exactalg::reduce_rows(a, orders);
  return a;
}

bool equal_mod(const IntMatrix& a, const IntMatrix& b, const std::vector<Int>& orders) {
  return reduce_mod(a - b, orders).is_zero();
}

GModule::GModule(std::shared_ptr<const FiniteGroup> group, std::vector<Int> orders, std::vector<std::string> labels,
                 std::vector<IntMatrix> actions, std::string name)
    : group_(std::move(group)),
      orders_(std::move(orders)),
      labels_(std::move(labels)),
      gen_action_(std::move(actions)),
      name_(std::move(name)) {
  const std::size_t n = orders_.size();
  if (labels_.empty())
    for (std::size_t i = 0; i < n; ++i) labels_.push_back("e" + std::to_string(i));
  if (labels_.size() != n) throw DataError("module label count differs from rank");
  if (gen_action_.size() != group_->generators().size())
    throw DataError("module " + name_ + " needs one action matrix per group generator");
  for (std::size_t i = 0; i < gen_action_.size(); ++i) {
    const IntMatrix& a = gen_action_[i];
    if (a.rows() != n || a.cols() != n) throw DimensionMismatch("action matrix has wrong shape");
    // relations must map to relations
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(orders_[j]) == 0) continue;
      for (std::size_t r = 0; r < n; ++r) {
        Int v = a(r, j) * orders_[j];
        if (sgn(orders_[r]) == 0 ? sgn(v) != 0 : !mpz_divisible_p(v.get_mpz_t(), orders_[r].get_mpz_t()))
          throw InvalidAction("generator " + group_->generator_names()[i] + " does not preserve the relations");
      }
    }
  }
  // element actions along the spanning tree; every other Cayley edge must agree
  const FiniteGroup& G = *group_;
  element_action_.assign(G.order(), IntMatrix());
  element_action_[G.identity()] = IntMatrix::identity(n);
  for (std::size_t g : G.bfs_order()) {
    if (g == G.identity()) continue;
    element_action_[g] = reduce_mod(element_action_[G.tree_parent(g)] * gen_action_[G.tree_generator(g)], orders_);
  }
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t i = 0; i < G.generators().size(); ++i) {
      std::size_t h = G.mul(g, G.generators()[i]);
      if (!equal_mod(element_action_[h], element_action_[g] * gen_action_[i], orders_))
        throw InvalidAction("action of module " + name_ + " is not compatible with the group law");
    }
}

GModule GModule::trivial(std::shared_ptr<const FiniteGroup> group, std::vector<Int> orders, std::string name) {
  std::vector<IntMatrix> acts(group->generators().size(), IntMatrix::identity(orders.size()));
  return GModule(std::move(group), std::move(orders), {}, std::move(acts), std::move(name));
}

FgAbGroup GModule::underlying() const { return FgAbGroup::from_factors(orders_, labels_); }

bool GModule::is_free() const {
  for (const auto& o : orders_)
    if (sgn(o) != 0) return false;
  return true;
}

}  // namespace picdesc::groupcoh
