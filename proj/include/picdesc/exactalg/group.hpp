#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "picdesc/exactalg/matrix.hpp"

namespace picdesc::exactalg {

// Coordinates of a subquotient Z/B of a diagonally presented ambient group.
struct SubquotientMap {
  std::size_t ambient = 0;
  std::vector<Int> ambient_orders;
  IntMatrix cycle_basis;        // ambient x z
  IntMatrix solve_u, solve_v;   // smith form of cycle_basis
  std::vector<Int> solve_d;
  IntMatrix quotient_u;         // z x z, rows select normal-form coordinates
  std::vector<std::size_t> kept;
  IntMatrix generators;         // ambient x k, columns are representatives
};

// Finitely generated abelian group in invariant-factor form:
// torsion d_1 | d_2 | ... (no units), then free summands (encoded 0).
class FgAbGroup {
 public:
  FgAbGroup() = default;
  static FgAbGroup from_factors(std::vector<Int> factors, std::vector<std::string> labels = {});
  static FgAbGroup cyclic(const Int& n) { return from_factors({n}); }
  static FgAbGroup free(std::size_t rank) { return from_factors(std::vector<Int>(rank, 0)); }

  const std::vector<Int>& factors() const { return factors_; }
  std::size_t ngens() const { return factors_.size(); }
  std::size_t free_rank() const;
  std::vector<Int> torsion() const;
  bool is_trivial() const { return factors_.empty(); }
  bool is_finite() const { return free_rank() == 0; }
  // 0 when infinite.
  Int order() const;
  Int torsion_order() const;
  // Largest power of p dividing the torsion subgroup's exponent pattern: the p-primary parts.
  std::vector<Int> primary_parts() const;

  std::string str() const;    // e.g. "ℤ/2 ⊕ ℤ"
  std::string ascii() const;  // e.g. "Z/2+Z"
  std::string compact() const;  // runs of three or more as powers, e.g. "(ℤ/2)^25 ⊕ ℤ"
  bool operator==(const FgAbGroup& o) const { return factors_ == o.factors_; }
  bool operator!=(const FgAbGroup& o) const { return !(*this == o); }

  FgAbGroup direct_sum(const FgAbGroup& o) const;

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> l);

  bool has_coordinates() const { return map_ != nullptr; }
  std::size_t ambient_dim() const;
  // Normal-form coordinates of an ambient cycle; nullopt when it is not a cycle.
  std::optional<std::vector<Int>> try_coordinates(const std::vector<Int>& ambient) const;
  std::vector<Int> coordinates(const std::vector<Int>& ambient) const;
  std::vector<Int> generator(std::size_t k) const;
  // Matrix of an ambient endomorphism on normal-form coordinates.
  IntMatrix induced_matrix(const IntMatrix& ambient_map) const;
  bool is_zero_class(const std::vector<Int>& ambient) const;

  void attach(std::shared_ptr<const SubquotientMap> m) { map_ = std::move(m); }

 private:
  std::vector<Int> factors_;
  std::vector<std::string> labels_;
  std::shared_ptr<const SubquotientMap> map_;
};

std::string group_string(const std::vector<Int>& factors);

// H = {x : g x = 0 in the target} / (im f + relations), all levels diagonally
// presented by order vectors (0 = free coordinate).
FgAbGroup homology(const IntMatrix& f, const IntMatrix& g, const std::vector<Int>& mid_orders,
                   const std::vector<Int>& target_orders);

// Free version: ker g / im f.
FgAbGroup cohomology_at(const IntMatrix& f, const IntMatrix& g);

// Quotient of the diagonally presented group by the span of the columns of rel.
FgAbGroup cokernel(const IntMatrix& rel, const std::vector<Int>& orders);

// Kernel of a map between diagonally presented groups.
FgAbGroup kernel(const IntMatrix& g, const std::vector<Int>& source_orders,
                 const std::vector<Int>& target_orders);

}  // namespace picdesc::exactalg
