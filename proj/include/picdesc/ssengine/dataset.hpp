#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "picdesc/data.hpp"
#include "picdesc/ssengine/rules.hpp"

namespace picdesc::ssengine {

struct ExplicitClass {
  std::string label;
  Bidegree b;
  Int order;
};

struct SeedSpec {
  int r = 2;
  std::string source, target;
  Provenance provenance = Provenance::Supplied;
  std::string note;
};

// charts/<name>.json; the schema is described in the README.
struct ChartDataset {
  std::string name, description;
  Window window;
  std::shared_ptr<Algebra> algebra;  // null when the chart has no generators
  std::vector<ExplicitClass> explicit_classes;
  std::map<std::pair<std::string, std::string>, std::string> products;
  std::vector<SeedSpec> differentials;
  std::vector<std::string> permanent;
  int last_page = 2;  // largest differential index in the dataset
};

ChartDataset chart_dataset_from_json(const Json& j, std::optional<int> truncation = std::nullopt);
ChartDataset load_chart_dataset(const std::string& name, std::optional<int> truncation = std::nullopt);

// Throws WindowEmpty, NonConfluentRelations.
std::shared_ptr<const E2Chart> e2_from_dataset(const ChartDataset& d);

struct RingRules {
  std::vector<DifferentialRule> rules;    // explicit and Leibniz-derived, all pages
  std::map<int, LeibnizResult> leibniz;   // per page index
};

// Explicit rules go in verbatim; monomial seeds of each page are closed under Leibniz.
RingRules dataset_rules(const ChartDataset& d, const E2Chart& chart);

// Rules of page r as a filtered list.
std::vector<DifferentialRule> rules_of_page(const std::vector<DifferentialRule>& rules, int r);

}  // namespace picdesc::ssengine
