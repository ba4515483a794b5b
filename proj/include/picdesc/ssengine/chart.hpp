#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "picdesc/exactalg/group.hpp"
#include "picdesc/ssengine/algebra.hpp"

namespace picdesc::ssengine {

using exactalg::FgAbGroup;
using exactalg::IntMatrix;

struct BasisClass {
  std::string label;
  Int order;                      // 0 for ℤ
  std::optional<Monomial> mono;   // set for classes enumerated from the algebra
};

// E_2 term: a based abelian group per bidegree.
struct E2Chart {
  std::string name;
  Window window;
  std::shared_ptr<const Algebra> algebra;  // may be null for purely explicit charts
  std::map<Bidegree, std::vector<BasisClass>> cells;
  // multiplication on listed pairs of labels, value is a label
  std::map<std::pair<std::string, std::string>, std::string> products;

  std::size_t dim(const Bidegree& b) const;
  std::vector<Int> orders(const Bidegree& b) const;
  std::optional<std::pair<Bidegree, std::size_t>> find(const std::string& label) const;
  // E2 coordinates of an algebra polynomial (all terms in one bidegree); nullopt when a term has
  // no basis class. Zero polynomial gives an empty optional bidegree.
  std::optional<std::vector<Int>> vector_of(const Poly& p, const Bidegree& b) const;
  std::string format(const Bidegree& b, const std::vector<Int>& v) const;
  void validate() const;  // unique labels, window, multiplication respects bidegrees
};

enum class Provenance { Supplied, Imported, Unstable, Leibniz };
std::string provenance_name(Provenance p);
Provenance provenance_from(const std::string& s);

struct DifferentialRule {
  int r = 2;
  Bidegree source;
  std::vector<Int> source_vec;  // E2 coordinates at source
  std::vector<Int> target_vec;  // E2 coordinates at source + (r, r-1)
  Provenance provenance = Provenance::Supplied;
  std::string source_label, target_label;
  std::string certificate;  // for imported rules: the inequality that held
  Bidegree target() const { return source + dr_offset(r); }
};

// E_r page: each cell is a subquotient of the previous page's cell.
class ChartPage {
 public:
  static std::shared_ptr<const ChartPage> initial(std::shared_ptr<const E2Chart> e2);

  int r() const { return r_; }
  const E2Chart& e2() const { return *e2_; }
  std::shared_ptr<const E2Chart> e2_ptr() const { return e2_; }
  std::shared_ptr<const ChartPage> previous() const { return prev_; }

  const std::map<Bidegree, FgAbGroup>& cells() const { return cells_; }
  FgAbGroup group(const Bidegree& b) const;
  // page coordinates of an E2 vector; nullopt when it does not survive as a cycle to this page
  std::optional<std::vector<Int>> coordinates(const Bidegree& b, const std::vector<Int>& e2vec) const;
  // E2 representative of the k-th page generator
  std::vector<Int> representative(const Bidegree& b, std::size_t k) const;

 private:
  friend std::shared_ptr<const ChartPage> turn_page(const std::shared_ptr<const ChartPage>&,
                                                    const std::vector<DifferentialRule>&);
  int r_ = 2;
  std::shared_ptr<const E2Chart> e2_;
  std::shared_ptr<const ChartPage> prev_;
  std::map<Bidegree, FgAbGroup> cells_;
};

using PagePtr = std::shared_ptr<const ChartPage>;

// d_r matrix on page generators from source cell b; absent rules act as zero.
// Throws RuleNotClosed when a rule target does not live on the page.
IntMatrix page_differential(const ChartPage& p, const std::vector<DifferentialRule>& rules, const Bidegree& b);

// E_{r+1} from the rules with index r. Checks bidegrees and d∘d = 0 first.
PagePtr turn_page(const PagePtr& p, const std::vector<DifferentialRule>& rules);

// Runs pages r = p.r() .. last, picking the rules of each index from the list.
PagePtr run_pages(PagePtr p, const std::vector<DifferentialRule>& rules, int last);

}  // namespace picdesc::ssengine
