#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "picdesc/ssengine/dataset.hpp"

namespace picdesc::picard {

using exactalg::FgAbGroup;
using exactalg::Int;
using ssengine::Bidegree;
using ssengine::DifferentialRule;
using ssengine::PagePtr;

// picard/<case>.json; the schema is described in the README.
struct PicardInput {
  std::string name, description;
  std::string chart;                  // ring chart dataset, empty for runs without one
  std::vector<std::string> assemble;  // cases whose s >= 1, t >= 2 parts are summed instead
  Json row0, row1;                    // sources for the t = 0 and t = 1 rows
  int rows_s_max = 3;
  int last_page = 2;
  int column_killed_from_s = 1 << 20;  // column classes at or above this filtration are known to die
  Int lower;                           // order of a known element
  std::string lower_justification;     // "periodicity", "generator" or "order-only"
  bool absorb_s0 = false;              // (0,0) is absorbed by the free summand
  std::optional<Json> constructed;     // {"case", "shift"} for the clutching construction
  std::vector<std::string> notes;
};

PicardInput picard_input_from_json(const Json& j);
PicardInput load_picard_input(const std::string& name);

struct PicChart {
  std::string name;
  std::shared_ptr<const ssengine::E2Chart> e2;
  std::shared_ptr<const ssengine::E2Chart> ring_e2;  // null for degenerate and assembled runs
  ssengine::RingRules ring;
  std::vector<DifferentialRule> rules;  // imported and carried-over rules
  std::vector<ssengine::Rejection> rejected;
  std::vector<std::string> notes;       // one line per row cell source
};

// Rows t = 0, 1 from group cohomology, rows t >= 2 from the ring chart shifted t' -> t'+1.
// Throws HypothesisFailed when an odd ring row is nonzero, MissingRow when a column cell of
// rows 0 or 1 cannot be produced.
PicChart build_pic_e2(const PicardInput& in, std::optional<int> truncation = std::nullopt);

struct UnstableReport {
  Bidegree spot;  // pic (t+1, t+1)
  FgAbGroup kernel;
  std::string note;
};

struct ColumnEntry {
  int s = 0;
  FgAbGroup e2, final;
  std::string history;  // e.g. "ℤ/2 -d3-> 0"
};

struct PicVerdict {
  std::string name;
  std::vector<ColumnEntry> column;
  std::vector<ColumnEntry> survivors;       // nonzero final groups below the cutoff
  std::vector<ColumnEntry> assumed_killed;  // nonzero at or above the cutoff
  std::size_t free_rank = 0;
  Int torsion_bound = 1;
  Int order_bound = 1;  // 0 when the bound is infinite
  std::vector<DifferentialRule> rules;  // every rule that was applied
  std::vector<UnstableReport> unstable;
  PagePtr final_page;
  std::string bound_string() const;
};

// Runs the pic chart with imported, supplied and unstable rules and multiplies column orders.
PicVerdict pic_upper_bound(const PicChart& chart, int last_page, int killed_from_s, bool absorb_s0,
                           bool unstable = true);
// Same with an explicit rule list and no unstable step (for comparisons).
PicVerdict pic_upper_bound_with(const PicChart& chart, const std::vector<DifferentialRule>& rules, int last_page,
                                int killed_from_s, bool absorb_s0);

struct Conclusion {
  std::string status;  // "cyclic-certified", "extension-ambiguous", "bound-only"
  FgAbGroup group;     // certified group, or survivors' sum for the other statuses
  std::string text;
};

// Throws BoundMismatch when the known lower bound exceeds the computed upper bound.
Conclusion conclude_pic(const PicVerdict& v, const Int& lower, const std::string& justification,
                        const std::optional<Int>& constructed_order = std::nullopt);

// Order of the element built from a self-equivalence of degree `shift` on a Picard group of
// the given order. Throws ZeroShift.
Int clutching_order(const Int& pic_order, const Int& shift);

// Column survivors with s >= 1: the kernel of Pic -> Pic of the cover. With `cyclic` the
// torsion part is taken cyclic (it sits inside a certified cyclic torsion group).
FgAbGroup relative_pic(const PicVerdict& v, bool cyclic);

struct CaseReport {
  PicardInput input;
  PicChart chart;
  PicVerdict verdict;
  Conclusion conclusion;
  FgAbGroup relative;
  std::vector<std::string> lines;  // human-readable summary
};

// Results are memoized per data root, case and truncation.
CaseReport run_case(const std::string& name, std::optional<int> truncation = std::nullopt);

// Names of the case files under picard/.
std::vector<std::string> case_names();

}  // namespace picdesc::picard
