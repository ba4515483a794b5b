#include "picdesc/ssengine/dataset.hpp"

#include "picdesc/errors.hpp"

namespace picdesc::ssengine {

namespace {

std::string bd(const Bidegree& b) { return "(" + std::to_string(b.s) + "," + std::to_string(b.t) + ")"; }

Int order_of(const Json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  return Int(j.get<long>());
}

}  // namespace

ChartDataset chart_dataset_from_json(const Json& j, std::optional<int> truncation) {
  ChartDataset d;
  try {
    d.name = j.at("name").get<std::string>();
    d.description = j.value("description", "");
    const Json& w = j.at("window");
    d.window = {w.at("s_max").get<int>(), w.at("stem_min").get<int>(), w.at("stem_max").get<int>()};

    if (j.contains("generators") && !j["generators"].empty()) {
      auto A = std::make_shared<Algebra>();
      A->truncation = truncation.value_or(j.value("truncation", 24));
      if (A->truncation < 0) throw DataError("negative truncation");
      A->base_order = order_of(j.value("base_order", Json(0)));
      for (const auto& g : j["generators"]) {
        Generator gen;
        gen.name = g.at("name").get<std::string>();
        gen.s = g.at("s").get<int>();
        gen.t = g.at("t").get<int>();
        gen.invertible = g.value("invertible", false);
        gen.coefficient = g.value("coefficient", false);
        gen.laurent = g.value("laurent", false);
        if (g.contains("range")) {
          gen.lo = g["range"].at(0).get<int>();
          gen.hi = g["range"].at(1).get<int>();
        }
        if (gen.s < 0) throw DataError("generator " + gen.name + " has negative filtration");
        if (gen.invertible && (gen.s != 0 || (gen.t % 2) != 0))
          throw DataError("invertible generator " + gen.name + " must sit in s = 0 and even t");
        if (gen.coefficient && (gen.s != 0 || gen.t != 0))
          throw DataError("coefficient generator " + gen.name + " must have bidegree (0,0)");
        if (!gen.invertible && !gen.coefficient && gen.s == 0 && gen.lo < 0)
          throw DataError("generator " + gen.name + " is not invertible");
        A->gens.push_back(gen);
      }
      // parse patterns and relations before any rule is active
      std::vector<OrderRule> orders;
      for (const auto& o : j.value("orders", Json::array()))
        orders.push_back({A->parse_monomial(o.at("pattern").get<std::string>()), order_of(o.at("order"))});
      A->order_rules = orders;
      std::vector<Rewrite> rw;
      for (const auto& r : j.value("relations", Json::array())) {
        Monomial lhs = A->parse_monomial(r.at("lhs").get<std::string>());
        for (std::size_t i = 0; i < lhs.size(); ++i)
          if (lhs[i] < 0 || (lhs[i] > 0 && A->gens[i].invertible))
            throw DataError("relation lhs " + r.at("lhs").get<std::string>() + " must use non-invertible generators");
        Poly rhs = A->parse(r.at("rhs").get<std::string>());
        for (const auto& [m, c] : rhs)
          if (A->degree(m) != A->degree(lhs))
            throw DataError("relation " + r.at("lhs").get<std::string>() + " is not homogeneous");
        rw.push_back({lhs, rhs});
      }
      A->rewrites = rw;
      d.algebra = A;
    }

    for (const auto& e : j.value("explicit", Json::array()))
      d.explicit_classes.push_back(
          {e.at("label").get<std::string>(), {e.at("s").get<int>(), e.at("t").get<int>()}, order_of(e.at("order"))});
    for (const auto& p : j.value("products", Json::array()))
      d.products[{p.at("left").get<std::string>(), p.at("right").get<std::string>()}] = p.at("value").get<std::string>();
    for (const auto& s : j.value("differentials", Json::array())) {
      SeedSpec sp;
      sp.r = s.at("r").get<int>();
      sp.source = s.at("source").get<std::string>();
      sp.target = s.at("target").get<std::string>();
      sp.provenance = provenance_from(s.value("provenance", "supplied-dataset"));
      sp.note = s.value("note", "");
      if (sp.r < 2) throw DataError("differential index below 2");
      d.last_page = std::max(d.last_page, sp.r);
      d.differentials.push_back(sp);
    }
    for (const auto& p : j.value("permanent", Json::array())) d.permanent.push_back(p.get<std::string>());
  } catch (const Json::exception& e) {
    throw DataError(std::string("chart dataset: ") + e.what());
  }
  return d;
}

ChartDataset load_chart_dataset(const std::string& name, std::optional<int> truncation) {
  return chart_dataset_from_json(read_json("charts/" + name + ".json"), truncation);
}

std::shared_ptr<const E2Chart> e2_from_dataset(const ChartDataset& d) {
  if (d.window.s_max < 0 || d.window.stem_min > d.window.stem_max)
    throw WindowEmpty(d.name + ": window contains no bidegree");
  auto c = std::make_shared<E2Chart>();
  c->name = d.name;
  c->window = d.window;
  c->algebra = d.algebra;
  c->products = d.products;
  if (d.algebra) {
    d.algebra->check_confluence(d.window);
    for (const auto& m : d.algebra->enumerate(d.window))
      c->cells[d.algebra->degree(m)].push_back({d.algebra->label(m), d.algebra->order(m), m});
  }
  for (const auto& e : d.explicit_classes) {
    if (!d.window.contains(e.b)) throw DataError(d.name + ": explicit class " + e.label + " outside the window");
    c->cells[e.b].push_back({e.label, e.order, std::nullopt});
  }
  c->validate();
  return c;
}

std::vector<DifferentialRule> rules_of_page(const std::vector<DifferentialRule>& rules, int r) {
  std::vector<DifferentialRule> out;
  for (const auto& x : rules)
    if (x.r == r) out.push_back(x);
  return out;
}

RingRules dataset_rules(const ChartDataset& d, const E2Chart& chart) {
  RingRules out;
  std::map<int, std::vector<MonomialSeed>> seeds;
  for (const auto& sp : d.differentials) {
    auto ex = chart.find(sp.source);
    const bool explicit_source = ex && !chart.cells.at(ex->first)[ex->second].mono;
    std::optional<Poly> src_poly;
    if (!explicit_source) {
      if (!d.algebra) throw DataError(d.name + ": unknown class " + sp.source);
      src_poly = d.algebra->parse(sp.source);
    }
    // target: an explicit label or an algebra polynomial
    auto target_vec = [&](const Bidegree& tb) -> std::optional<std::vector<Int>> {
      auto tl = chart.find(sp.target);
      if (tl && !chart.cells.at(tl->first)[tl->second].mono) {
        if (tl->first != tb) throw RuleNotClosed(d.name + ": d" + std::to_string(sp.r) + " of " + sp.source +
                                                 " breaks the bidegree law");
        std::vector<Int> v(chart.dim(tb));
        v[tl->second] = 1;
        return v;
      }
      if (!d.algebra) throw DataError(d.name + ": unknown class " + sp.target);
      Poly p = d.algebra->parse(sp.target);
      if (p.empty()) return std::vector<Int>(chart.dim(tb));
      return chart.vector_of(p, tb);
    };
    if (explicit_source || src_poly->size() != 1 || src_poly->begin()->second != 1) {
      // verbatim rule on one class (or a multiple of a monomial class)
      Bidegree sb;
      std::vector<Int> sv;
      if (explicit_source) {
        sb = ex->first;
        sv.assign(chart.dim(sb), 0);
        sv[ex->second] = 1;
      } else {
        if (src_poly->size() != 1) throw DataError(d.name + ": rule source " + sp.source + " is not a single class");
        sb = d.algebra->degree(src_poly->begin()->first);
        auto v = chart.vector_of(*src_poly, sb);
        if (!v) continue;  // outside the window
        sv = *v;
      }
      const Bidegree tb = sb + dr_offset(sp.r);
      if (!chart.window.contains(tb)) continue;
      auto tv = target_vec(tb);
      if (!tv) throw UnresolvableProduct(d.name + ": target " + sp.target + " has no basis expression at " + bd(tb));
      DifferentialRule rule;
      rule.r = sp.r;
      rule.source = sb;
      rule.source_vec = sv;
      rule.target_vec = *tv;
      rule.provenance = sp.provenance;
      rule.source_label = sp.source;
      rule.target_label = sp.target;
      rule.certificate = sp.note;
      out.rules.push_back(rule);
      continue;
    }
    Poly tp = d.algebra->parse(sp.target);
    seeds[sp.r].push_back({src_poly->begin()->first, tp});
  }
  std::vector<std::size_t> perm;
  for (const auto& p : d.permanent) perm.push_back(d.algebra ? d.algebra->index(p) : 0);
  for (const auto& [r, sd] : seeds) {
    LeibnizResult lr = leibniz_close(chart, r, sd, perm);
    for (auto rule : lr.rules) out.rules.push_back(rule);
    out.leibniz.emplace(r, std::move(lr));
  }
  return out;
}

}  // namespace picdesc::ssengine
