#pragma once

#include <memory>
#include <string>
#include <vector>

#include "picdesc/exactalg/group.hpp"
#include "picdesc/groupcoh/group.hpp"

namespace picdesc::groupcoh {

using exactalg::FgAbGroup;

// Left G-module on ⊕ ℤ/orders[i] (0 = ℤ); one action matrix per group generator,
// acting on column vectors. Element actions are derived and checked against the table.
class GModule {
 public:
  GModule(std::shared_ptr<const FiniteGroup> group, std::vector<Int> orders, std::vector<std::string> labels,
          std::vector<IntMatrix> generator_actions, std::string name = "");

  static GModule trivial(std::shared_ptr<const FiniteGroup> group, std::vector<Int> orders, std::string name = "");

  const FiniteGroup& group() const { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<Int>& orders() const { return orders_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }
  const IntMatrix& action(std::size_t element) const { return element_action_[element]; }
  const IntMatrix& generator_action(std::size_t i) const { return gen_action_[i]; }
  FgAbGroup underlying() const;
  bool is_free() const;

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Int> orders_;
  std::vector<std::string> labels_;
  std::vector<IntMatrix> gen_action_;
  std::vector<IntMatrix> element_action_;
  std::string name_;
};

bool equal_mod(const IntMatrix& a, const IntMatrix& b, const std::vector<Int>& orders);
IntMatrix reduce_mod(IntMatrix a, const std::vector<Int>& orders);

}  // namespace picdesc::groupcoh
