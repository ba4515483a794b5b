#include "picdesc/picard/picard.hpp"

#include <algorithm>
#include <filesystem>

#include "picdesc/errors.hpp"
#include "picdesc/exactalg/group.hpp"
#include "picdesc/groupcoh/cohomology.hpp"
#include "picdesc/groupcoh/io.hpp"

namespace picdesc::picard {

using namespace ssengine;
using exactalg::IntMatrix;

namespace {

std::string bd(const Bidegree& b) { return "(" + std::to_string(b.s) + "," + std::to_string(b.t) + ")"; }

Int to_int(const Json& j) { return j.is_string() ? Int(j.get<std::string>()) : Int(j.get<long>()); }

std::vector<Int> int_list(const Json& j) {
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(to_int(x));
  return out;
}

IntMatrix matrix_of(const Json& rows, std::size_t ncols) {
  IntMatrix m(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncols) throw DataError("ragged matrix in picard input");
    for (std::size_t j = 0; j < ncols; ++j) m(i, j) = to_int(rows[i][j]);
  }
  return m;
}

std::vector<Int> concat(std::vector<Int> a, const std::vector<Int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct RowCells {
  std::map<int, FgAbGroup> cells;
  std::vector<std::string> notes;
};

int free_extra(const Json& spec, int D) {
  if (!spec.contains("free_extra")) return 0;
  const Json& f = spec["free_extra"];
  if (f.is_number()) return f.get<int>();
  const std::string s = f.get<std::string>();
  if (s == "D") return D;
  if (s == "D+1") return D + 1;
  throw DataError("free_extra must be an integer, \"D\" or \"D+1\"");
}

RowCells row_cells(const Json& spec, int t, int s_max, int D, std::optional<int> truncation) {
  RowCells out;
  if (spec.is_null()) return out;
  const std::string kind = spec.at("kind").get<std::string>();
  const int top = std::min(s_max, spec.value("s_max", s_max));
  auto from_module = [&](const groupcoh::GModule& m, const std::string& method) {
    const std::string src = m.name().empty() ? "module" : m.name();
    if (method == "lhs") {
      std::vector<std::size_t> normal;
      for (const auto& k : spec.at("normal")) normal.push_back(m.group().generators().at(k.get<std::size_t>()));
      auto r = groupcoh::lhs_assemble(m, normal, top);
      for (int s = 0; s <= top; ++s) {
        if (r.resolved[s]) out.cells[s] = r.total[s];
        else out.notes.push_back("H^" + std::to_string(s) + "(" + src + ") left open by the extension spectral sequence");
      }
      out.notes.push_back("row " + std::to_string(t) + ": H^*(" + src + ") by the extension spectral sequence" +
                          (r.collapses ? " (collapses)" : ""));
    } else if (method == "bar") {
      auto hs = groupcoh::bar_h(m, top);
      for (int s = 0; s <= top; ++s) out.cells[s] = hs[s];
      out.notes.push_back("row " + std::to_string(t) + ": H^*(" + src + ") from the bar complex");
    } else if (method == "h1") {
      out.cells[0] = groupcoh::invariants(m);
      if (top >= 1) out.cells[1] = groupcoh::h1_crossed(m);
      out.notes.push_back("row " + std::to_string(t) + ": H^0, H^1(" + src + ") only");
    } else {
      throw DataError("unknown row method " + method);
    }
  };

  if (kind == "module") {
    from_module(groupcoh::load_module(spec.at("module").get<std::string>()), spec.value("method", "bar"));
  } else if (kind == "trivial") {
    auto g = groupcoh::load_group(spec.at("group").get<std::string>());
    auto orders = int_list(spec.at("orders"));
    const int extra = free_extra(spec, D);
    for (int k = 0; k < extra; ++k) orders.push_back(0);
    from_module(groupcoh::GModule::trivial(g, orders, spec.value("name", "trivial")), spec.value("method", "bar"));
  } else if (kind == "modp") {
    auto g = groupcoh::load_group(spec.at("group").get<std::string>());
    const long p = spec.at("p").get<long>();
    auto dims = groupcoh::modp_resolution_dims(*g, p, top);
    for (int s = 0; s <= top; ++s) out.cells[s] = FgAbGroup::from_factors(std::vector<Int>(dims[s], Int(p)));
    out.notes.push_back("row " + std::to_string(t) + ": H^*(" + g->name() + "; F_" + std::to_string(p) +
                        ") from a free resolution");
  } else if (kind == "constant") {
    out.cells[0] = FgAbGroup::cyclic(to_int(spec.at("order")));
    out.notes.push_back("row " + std::to_string(t) + ": only s = 0, order " + to_int(spec.at("order")).get_str());
  } else if (kind == "cells") {
    for (const auto& c : spec.at("cells")) {
      std::vector<std::string> labels;
      for (const auto& l : c.value("labels", Json::array())) labels.push_back(l.get<std::string>());
      out.cells[c.at("s").get<int>()] = FgAbGroup::from_factors(int_list(c.at("factors")), labels);
    }
    out.notes.push_back("row " + std::to_string(t) + ": " + spec.value("note", "cells given in the input"));
  } else if (kind == "picard-run") {
    const std::string name = spec.at("case").get<std::string>();
    auto rep = run_case(name, truncation);
    if (rep.conclusion.status == "bound-only")
      throw HypothesisFailed("case " + name + " has no certified Picard group");
    out.cells[spec.value("s", 1)] = rep.conclusion.group;
    out.notes.push_back("row " + std::to_string(t) + ": s = " + std::to_string(spec.value("s", 1)) + " is Pic of " +
                        name + " = " + rep.conclusion.group.str());
  } else if (kind == "gluing") {
    // 0 -> coker(units) -> Pic -> ker(Pic_1 + Pic_2 -> Pic_12) -> 0
    const auto& pieces = spec.at("pieces");
    const auto overlap = int_list(spec.at("overlap_orders"));
    std::vector<Int> src;
    IntMatrix g(overlap.size(), 0);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      auto rep = run_case(pieces[k].get<std::string>(), truncation);
      if (rep.conclusion.status != "cyclic-certified")
        throw HypothesisFailed("piece " + pieces[k].get<std::string>() + " is not certified");
      const auto& f = rep.conclusion.group.factors();
      IntMatrix m = matrix_of(spec.at("maps").at(k), f.size());
      if (m.rows() != overlap.size()) throw DimensionMismatch("gluing map has the wrong target");
      if (k > 0)
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
      g = exactalg::hstack(g, m);
      src = concat(src, f);
    }
    FgAbGroup ker = exactalg::kernel(g, src, overlap);
    const Json& u = spec.at("units");
    const auto uover = int_list(u.at("overlap_orders"));
    IntMatrix rel(uover.size(), 0);
    for (std::size_t k = 0; k < u.at("maps").size(); ++k)
      rel = exactalg::hstack(rel, matrix_of(u["maps"][k], u.at("piece_orders").at(k).size()));
    FgAbGroup coker = exactalg::cokernel(rel, uover);
    out.cells[1] = coker.direct_sum(ker);
    out.notes.push_back("row " + std::to_string(t) + ": s = 1 glued: coker of units " + coker.str() +
                        ", kernel on Pic " + ker.str() + (coker.is_trivial() ? "" : " (extension not determined)"));
  } else if (kind != "none") {
    throw DataError("unknown row kind " + kind);
  }
  for (auto it = out.cells.begin(); it != out.cells.end();) {
    if (it->first > s_max) it = out.cells.erase(it);
    else ++it;
  }
  return out;
}

void put_cell(E2Chart& c, const Bidegree& b, const FgAbGroup& g, const std::string& tag) {
  if (!c.window.contains(b) || g.is_trivial()) return;
  auto& cell = c.cells[b];
  for (std::size_t k = 0; k < g.ngens(); ++k) {
    std::string lab = (k < g.labels().size() && !g.labels()[k].empty()) ? g.labels()[k] : "#" + std::to_string(k);
    cell.push_back({tag + bd(b) + lab, g.factors()[k], std::nullopt});
  }
}

void add_rows(const PicardInput& in, PicChart& pc, E2Chart& c, int D, std::optional<int> truncation) {
  for (int t : {0, 1}) {
    RowCells rc = row_cells(t == 0 ? in.row0 : in.row1, t, std::min(in.rows_s_max, c.window.s_max), D, truncation);
    for (const auto& [s, g] : rc.cells) put_cell(c, {s, t}, g, "E");
    for (auto& n : rc.notes) pc.notes.push_back(n);
    if (c.window.contains({t, t}) && !rc.cells.count(t))
      throw MissingRow(in.name + ": no group for the column cell " + bd({t, t}));
  }
}

bool all_zero(const std::vector<Int>& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

int chart_truncation(const std::string& chart, std::optional<int> truncation) {
  if (truncation) return *truncation;
  if (chart.empty()) return 24;
  return read_json("charts/" + chart + ".json").value("truncation", 24);
}

}  // namespace

PicardInput picard_input_from_json(const Json& j) {
  PicardInput in;
  try {
    in.name = j.at("name").get<std::string>();
    in.description = j.value("description", "");
    in.chart = j.value("chart", "");
    for (const auto& a : j.value("assemble", Json::array())) in.assemble.push_back(a.get<std::string>());
    in.row0 = j.value("row0", Json());
    in.row1 = j.value("row1", Json());
    in.rows_s_max = j.value("rows_s_max", 3);
    in.last_page = j.value("last_page", 2);
    in.column_killed_from_s = j.value("column_killed_from_s", 1 << 20);
    in.lower = to_int(j.at("lower_bound"));
    in.lower_justification = j.value("lower_justification", "order-only");
    in.absorb_s0 = j.value("absorb_s0", false);
    if (j.contains("constructed")) in.constructed = j["constructed"];
    for (const auto& n : j.value("notes", Json::array())) in.notes.push_back(n.get<std::string>());
  } catch (const Json::exception& e) {
    throw DataError(std::string("picard input: ") + e.what());
  }
  if (!in.chart.empty() && !in.assemble.empty()) throw DataError(in.name + ": chart and assemble are exclusive");
  const auto& lj = in.lower_justification;
  if (lj != "periodicity" && lj != "generator" && lj != "order-only")
    throw DataError(in.name + ": unknown lower bound justification " + lj);
  return in;
}

PicardInput load_picard_input(const std::string& name) { return picard_input_from_json(read_json("picard/" + name + ".json")); }

std::vector<std::string> case_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(data_root() / "picard"))
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

PicChart build_pic_e2(const PicardInput& in, std::optional<int> truncation) {
  PicChart pc;
  pc.name = in.name;
  auto c = std::make_shared<E2Chart>();
  c->name = in.name + "-pic";
  const int D = chart_truncation(in.chart, truncation);

  if (!in.chart.empty()) {
    ChartDataset ds = load_chart_dataset(in.chart, truncation);
    pc.ring_e2 = e2_from_dataset(ds);
    pc.ring = dataset_rules(ds, *pc.ring_e2);
    const Window& w = pc.ring_e2->window;
    c->window = {w.s_max, w.stem_min + 1, w.stem_max + 1};
    for (const auto& [b, basis] : pc.ring_e2->cells) {
      if (basis.empty()) continue;
      if (b.t % 2 != 0)
        throw HypothesisFailed(in.chart + ": ring class " + basis[0].label + " in odd degree t = " + std::to_string(b.t));
      if (b.t >= 1) c->cells[{b.s, b.t + 1}] = basis;
    }
    add_rows(in, pc, *c, D, truncation);
    c->validate();
    auto imp = import_comparison(pc.ring.rules, *c);
    pc.rules = imp.imported;
    pc.rejected = imp.rejected;
  } else if (!in.assemble.empty()) {
    std::vector<CaseReport> parts;
    for (const auto& p : in.assemble) parts.push_back(run_case(p, truncation));
    Window w = parts[0].chart.e2->window;
    for (const auto& p : parts) {
      const Window& o = p.chart.e2->window;
      w = {std::min(w.s_max, o.s_max), std::max(w.stem_min, o.stem_min), std::min(w.stem_max, o.stem_max)};
    }
    c->window = w;
    // offsets of each part inside the summed cells
    std::vector<std::map<Bidegree, std::size_t>> offset(parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k)
      for (const auto& [b, basis] : parts[k].chart.e2->cells) {
        if (b.s < 1 || b.t < 2 || !w.contains(b)) continue;
        auto& cell = c->cells[b];
        offset[k][b] = cell.size();
        for (auto cl : basis) {
          cl.label = parts[k].input.name + ":" + cl.label;
          cell.push_back(cl);
        }
      }
    add_rows(in, pc, *c, D, truncation);
    c->validate();
    for (std::size_t k = 0; k < parts.size(); ++k) {
      for (const auto& rule : parts[k].verdict.rules) {
        if (!offset[k].count(rule.source)) continue;
        DifferentialRule x = rule;
        x.source_vec.assign(c->dim(rule.source), 0);
        std::copy(rule.source_vec.begin(), rule.source_vec.end(), x.source_vec.begin() + offset[k][rule.source]);
        const Bidegree tb = rule.target();
        if (offset[k].count(tb)) {
          x.target_vec.assign(c->dim(tb), 0);
          std::copy(rule.target_vec.begin(), rule.target_vec.end(), x.target_vec.begin() + offset[k][tb]);
        } else if (all_zero(rule.target_vec) || !w.contains(tb)) {
          x.target_vec.assign(w.contains(tb) ? c->dim(tb) : 0, 0);
        } else {
          throw DataError(in.name + ": carried rule lands outside the summed cells at " + bd(tb));
        }
        x.source_label = parts[k].input.name + ":" + rule.source_label;
        pc.rules.push_back(x);
      }
      pc.notes.push_back("rows t >= 2 and the rules on them are carried from " + parts[k].input.name);
    }
  } else {
    const int S = in.rows_s_max;
    c->window = {S, -S, 1};
    add_rows(in, pc, *c, D, truncation);
    c->validate();
  }
  pc.e2 = c;
  return pc;
}

std::string PicVerdict::bound_string() const {
  if (free_rank == 0) return order_bound.get_str();
  std::string f = free_rank == 1 ? "ℤ" : "ℤ^" + std::to_string(free_rank);
  return f + " ⊕ (torsion of order dividing " + torsion_bound.get_str() + ")";
}

namespace {

PicVerdict run_verdict(const PicChart& chart, std::vector<DifferentialRule> rules, int last_page, int killed_from_s,
                       bool absorb_s0, bool unstable) {
  PicVerdict v;
  v.name = chart.name;
  const E2Chart& e2 = *chart.e2;
  PagePtr page = ChartPage::initial(chart.e2);
  std::map<int, std::string> history;
  for (int s = 0; e2.window.contains({s, s}); ++s) history[s] = page->group({s, s}).compact();
  if (history.empty()) throw WindowEmpty(chart.name + ": the window misses the t = s column");

  for (int r = 2; r <= last_page; ++r) {
    auto rr = rules_of_page(rules, r);
    const Bidegree src{r, r}, tgt = src + dr_offset(r);
    if (unstable && chart.ring_e2 && e2.window.contains(src) && !page->group(src).is_trivial() &&
        e2.window.contains(tgt)) {
      UnstableReport rep{src, {}, ""};
      if (page->group(tgt).is_trivial()) {
        rep.kernel = page->group(src);
        rep.note = "target cell is zero on page " + std::to_string(r);
      } else {
        try {
          auto maps = coefficient_maps(*chart.ring_e2, chart.ring.rules, {r, r - 1});
          auto u = unstable_first_differential(*page, {r, r - 1}, maps.ring_d, maps.square);
          rep.kernel = u.kernel;
          rep.note = "d(x) + x^2, image " + u.image.compact();
          for (auto& x : u.rules) {
            rules.push_back(x);
            rr.push_back(x);
          }
        } catch (const NotCharTwo& e) {
          rep.kernel = page->group(src);
          rep.note = std::string("unknown, treated as zero: ") + e.what();
        } catch (const UnresolvableProduct& e) {
          rep.kernel = page->group(src);
          rep.note = std::string("unknown, treated as zero: ") + e.what();
        }
      }
      v.unstable.push_back(rep);
    }
    auto next = turn_page(page, rr);
    for (auto& [s, h] : history) {
      FgAbGroup a = page->group({s, s}), b = next->group({s, s});
      if (a != b) h += " -d" + std::to_string(r) + "-> " + b.compact();
    }
    page = next;
  }
  v.final_page = page;
  for (const auto& x : rules)
    if (x.r <= last_page) v.rules.push_back(x);

  for (const auto& [s, h] : history) {
    ColumnEntry ce{s, ChartPage::initial(chart.e2)->group({s, s}), page->group({s, s}), h};
    v.column.push_back(ce);
    if (ce.final.is_trivial()) continue;
    if (s >= killed_from_s) {
      v.assumed_killed.push_back(ce);
      continue;
    }
    v.survivors.push_back(ce);
    v.free_rank += ce.final.free_rank();
    if (!(absorb_s0 && s == 0)) v.torsion_bound *= ce.final.torsion_order();
  }
  if (absorb_s0 && v.free_rank == 0) throw HypothesisFailed(chart.name + ": nothing free to absorb the s = 0 cell");
  if (v.free_rank == 0) {
    v.order_bound = 1;
    for (const auto& ce : v.survivors) v.order_bound *= ce.final.order();
  } else {
    v.order_bound = 0;
  }
  return v;
}

}  // namespace

PicVerdict pic_upper_bound(const PicChart& chart, int last_page, int killed_from_s, bool absorb_s0, bool unstable) {
  return run_verdict(chart, chart.rules, last_page, killed_from_s, absorb_s0, unstable);
}

PicVerdict pic_upper_bound_with(const PicChart& chart, const std::vector<DifferentialRule>& rules, int last_page,
                                int killed_from_s, bool absorb_s0) {
  return run_verdict(chart, rules, last_page, killed_from_s, absorb_s0, false);
}

Conclusion conclude_pic(const PicVerdict& v, const Int& lower, const std::string& justification,
                        const std::optional<Int>& constructed_order) {
  Conclusion c;
  std::vector<Int> sf;
  for (const auto& ce : v.survivors)
    for (const auto& f : ce.final.factors()) sf.push_back(f);
  c.group = FgAbGroup::from_factors(sf);
  const bool strong = justification == "periodicity" || justification == "generator";
  if (v.free_rank == 0) {
    if (lower > v.order_bound || v.order_bound % lower != 0)
      throw BoundMismatch(v.name + ": known element of order " + lower.get_str() + " against upper bound " +
                          v.order_bound.get_str());
    if (lower == v.order_bound && strong) {
      c.status = "cyclic-certified";
      c.group = FgAbGroup::cyclic(lower);
      c.text = "Pic = " + c.group.str() + " (upper bound met by an element of order " + lower.get_str() + ")";
    } else if (lower == v.order_bound) {
      c.status = "extension-ambiguous";
      c.text = "|Pic| = " + lower.get_str() + ", group structure not determined";
    } else {
      c.status = "bound-only";
      c.text = "|Pic| divides " + v.order_bound.get_str() + ", element of order " + lower.get_str() + " known";
    }
    return c;
  }
  if (lower > v.torsion_bound)
    throw BoundMismatch(v.name + ": lower bound exceeds the torsion bound");
  if (!constructed_order) {
    c.status = "bound-only";
    c.text = "Pic = " + v.bound_string();
    return c;
  }
  const Int& k = *constructed_order;
  if (k > v.torsion_bound || v.torsion_bound % k != 0)
    throw BoundMismatch(v.name + ": constructed torsion of order " + k.get_str() + " against bound " +
                        v.torsion_bound.get_str());
  if (k == v.torsion_bound) {
    c.status = "cyclic-certified";
    c.group = FgAbGroup::free(v.free_rank).direct_sum(FgAbGroup::cyclic(k));
    c.text = "Pic = " + c.group.str() + " (torsion bound met by a constructed element of order " + k.get_str() + ")";
  } else {
    c.status = "bound-only";
    c.text = "Pic = " + v.bound_string() + ", torsion element of order " + k.get_str() + " known";
  }
  return c;
}

Int clutching_order(const Int& pic_order, const Int& shift) {
  if (sgn(shift) == 0) throw ZeroShift("clutching needs a nonzero shift");
  Int a = abs(shift), g;
  mpz_gcd(g.get_mpz_t(), pic_order.get_mpz_t(), a.get_mpz_t());
  return pic_order / g;
}

FgAbGroup relative_pic(const PicVerdict& v, bool cyclic) {
  std::vector<Int> f;
  Int n = 1;
  std::size_t free = 0;
  for (const auto& ce : v.survivors) {
    if (ce.s < 1) continue;
    free += ce.final.free_rank();
    for (const auto& x : ce.final.torsion()) {
      f.push_back(x);
      n *= x;
    }
  }
  return FgAbGroup::free(free).direct_sum(cyclic ? FgAbGroup::cyclic(n) : FgAbGroup::from_factors(f));
}

namespace {
std::map<std::pair<std::string, int>, CaseReport>& case_cache() {
  static std::map<std::pair<std::string, int>, CaseReport> c;
  return c;
}
}  // namespace

CaseReport run_case(const std::string& name, std::optional<int> truncation) {
  const std::pair<std::string, int> key{data_root().string() + "|" + name, truncation.value_or(-1)};
  if (auto it = case_cache().find(key); it != case_cache().end()) return it->second;
  CaseReport rep;
  rep.input = load_picard_input(name);
  const PicardInput& in = rep.input;
  rep.chart = build_pic_e2(in, truncation);
  rep.verdict = pic_upper_bound(rep.chart, in.last_page, in.column_killed_from_s, in.absorb_s0, in.assemble.empty());
  std::optional<Int> constructed;
  std::string cline;
  if (in.constructed) {
    const std::string other = in.constructed->at("case").get<std::string>();
    const Int shift = to_int(in.constructed->at("shift"));
    auto o = run_case(other, truncation);
    if (o.conclusion.status == "bound-only")
      throw HypothesisFailed(name + ": clutching needs the order of Pic(" + other + ")");
    constructed = clutching_order(o.conclusion.group.order(), shift);
    cline = "clutching along " + other + " (|Pic| = " + o.conclusion.group.order().get_str() + ", shift " +
            shift.get_str() + ") gives an element of order " + constructed->get_str();
  }
  rep.conclusion = conclude_pic(rep.verdict, in.lower, in.lower_justification, constructed);
  rep.relative = relative_pic(rep.verdict, rep.conclusion.status == "cyclic-certified");

  auto& L = rep.lines;
  L.push_back("case " + in.name + (in.description.empty() ? "" : ": " + in.description));
  for (const auto& n : rep.chart.notes) L.push_back("  " + n);
  L.push_back("  t = s column:");
  for (const auto& ce : rep.verdict.column)
    if (!ce.e2.is_trivial()) L.push_back("    s=" + std::to_string(ce.s) + ": " + ce.history);
  for (const auto& u : rep.verdict.unstable)
    L.push_back("  unstable d at " + bd(u.spot) + ": kernel " + u.kernel.compact() + "; " + u.note);
  for (const auto& ce : rep.verdict.assumed_killed)
    L.push_back("  s=" + std::to_string(ce.s) + ": " + ce.final.compact() + " past the cutoff s >= " +
                std::to_string(in.column_killed_from_s) + ", counted as killed");
  std::size_t rej = rep.chart.rejected.size();
  if (rej) L.push_back("  " + std::to_string(rej) + " ring differentials not imported");
  L.push_back("  upper bound: " + rep.verdict.bound_string());
  L.push_back("  lower bound: " + in.lower.get_str() + " (" + in.lower_justification + ")");
  if (!cline.empty()) L.push_back("  " + cline);
  L.push_back("  " + rep.conclusion.status + ": " + rep.conclusion.text);
  L.push_back("  relative: " + rep.relative.compact());
  for (const auto& n : in.notes) L.push_back("  note: " + n);
  case_cache().emplace(key, rep);
  return rep;
}

}  // namespace picdesc::picard
