#include <regex>
#include <set>

#include "doctest.h"
#include "picdesc/chartviz/chartviz.hpp"
#include "picdesc/errors.hpp"
#include "picdesc/picard/picard.hpp"
#include "picdesc/ssengine/dataset.hpp"

using namespace picdesc;
using namespace picdesc::chartviz;
using namespace picdesc::ssengine;

namespace {

struct Ring {
  ChartDataset d;
  std::shared_ptr<const E2Chart> e2;
  RingRules rules;
};

Ring ring(const std::string& name) {
  Ring r{load_chart_dataset(name), nullptr, {}};
  r.e2 = e2_from_dataset(r.d);
  r.rules = dataset_rules(r.d, *r.e2);
  return r;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto k = hay.find(needle); k != std::string::npos; k = hay.find(needle, k + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("same input, same bytes") {
  auto k = ring("ko");
  auto p2 = ChartPage::initial(k.e2);
  auto p3 = turn_page(p2, k.rules.rules);
  const auto st = load_style();
  const auto a = render_svg({p2, p3}, k.rules.rules, st);
  const auto b = render_svg({p2, p3}, k.rules.rules, st);
  CHECK(a == b);
  CHECK(a.rfind("<?xml", 0) == 0);
  CHECK(count(a, "<g id=\"page-") == 2);
}

TEST_CASE("empty page draws axes and legend only") {
  auto e2 = std::make_shared<E2Chart>();
  e2->name = "e";
  e2->window = Window{2, 0, 2};
  const auto svg = render_svg({ChartPage::initial(e2)}, {}, load_style());
  CHECK(count(svg, "<title>") == 0);
  CHECK(count(svg, "marker-end") == 0);
  CHECK(svg.find("id=\"legend\"") != std::string::npos);
  CHECK(svg.find("t-s") != std::string::npos);
}

TEST_CASE("unknown order pattern without a fallback") {
  auto t = ring("tmf2");
  ChartStyle st = load_style();
  st.glyphs.erase("*");
  st.glyphs.erase("Z/3");
  CHECK_THROWS_AS(render_svg({ChartPage::initial(t.e2)}, {}, st), UnknownGlyph);
  st.glyphs["*"] = "numbered";
  CHECK_NOTHROW(render_svg({ChartPage::initial(t.e2)}, {}, st));
}

TEST_CASE("window checks") {
  auto k = ring("ko");
  auto p = ChartPage::initial(k.e2);
  CHECK_THROWS_AS(render_svg({p}, {}, load_style(), {Window{40, -4, 7}, nullptr, ""}), DataError);
  CHECK_THROWS_AS(render_svg({p}, {}, load_style(), {Window{4, -40, 7}, nullptr, ""}), DataError);
  CHECK_THROWS_AS(render_svg({}, {}, load_style()), DataError);
}

TEST_CASE("every page generator in the window is drawn once") {
  for (const char* n : {"ko", "tmf2", "tmf3"}) {
    CAPTURE(n);
    auto r = ring(n);
    auto p = ChartPage::initial(r.e2);
    for (int page = 2; page <= 6; ++page) {
      const Window w{7, -4, 7};
      std::size_t want = 0;
      for (const auto& [b, g] : p->cells())
        if (w.contains(b)) want += g.ngens();
      std::size_t got = 0;
      std::set<std::pair<Bidegree, std::size_t>> seen;
      for (const auto& gl : page_glyphs(*p, w)) {
        CHECK(w.contains(gl.at));
        for (auto m : gl.members) CHECK(seen.insert({gl.at, m}).second);
        got += gl.members.size();
      }
      CHECK(got == want);
      p = turn_page(p, r.rules.rules);
    }
  }
}

TEST_CASE("KO E2 in a small window") {
  auto k = ring("ko");
  auto p = ChartPage::initial(k.e2);
  const Window w{7, -4, 7};
  const auto svg = render_svg({p}, k.rules.rules, load_style(), {w, nullptr, "KO"});
  // one class per (s, stem) with h1^s u2^k: stem = s + 4k, stems -4..7, s <= 7
  std::size_t want = 0;
  for (int s = 0; s <= 7; ++s)
    for (int stem = -4; stem <= 7; ++stem) want += ((stem - s) % 4 == 0);
  CHECK(count(svg, "<title>") == want);
  CHECK(count(svg, "marker-end") == 0);  // no d2
  // h1 lines: every class with s < 7 and stem < 7 multiplies to a class
  std::size_t lines = 0;
  for (int s = 0; s < 7; ++s)
    for (int stem = -4; stem < 7; ++stem) lines += ((stem - s) % 4 == 0);
  std::regex ln("<line x1=\"[0-9]+\" y1=\"[0-9]+\" x2=\"[0-9]+\" y2=\"[0-9]+\"/>");
  auto grid_lines = static_cast<std::size_t>((12 + 1) + (8 + 1));
  std::size_t all = std::distance(std::sregex_iterator(svg.begin(), svg.end(), ln), std::sregex_iterator());
  CHECK(all - grid_lines == lines);
}

TEST_CASE("arrows come from rules of the panel's page") {
  auto k = ring("ko");
  auto p3 = turn_page(ChartPage::initial(k.e2), k.rules.rules);
  const Window w{7, -4, 7};
  // d3 from u2-powers with odd exponent times h1^m; target h1^(m+3) u2^(k-1)
  std::size_t want = 0;
  for (const auto& x : rules_of_page(k.rules.rules, 3)) {
    if (!w.contains(x.source) || !w.contains(x.target())) continue;
    auto tc = p3->coordinates(x.target(), x.target_vec);
    if (tc && !exactalg::zero_mod(*tc, p3->group(x.target()).factors())) ++want;
  }
  CHECK(want > 0);
  auto svg = render_svg({p3}, k.rules.rules, load_style(), {w, nullptr, ""});
  CHECK(count(svg, "marker-end") == want);
  CHECK(svg.find(load_style().arrows.at("3")) != std::string::npos);
  // no rules, no arrows
  CHECK(count(render_svg({p3}, {}, load_style(), {w, nullptr, ""}), "marker-end") == 0);
}

TEST_CASE("TMF(2) Picard page carries d5 arrows") {
  auto r = picard::run_case("tmf2");
  auto p = ChartPage::initial(r.chart.e2);
  while (p->r() < 5) p = turn_page(p, r.verdict.rules);
  const auto A = r.chart.ring_e2 ? r.chart.ring_e2->algebra.get() : nullptr;
  auto svg = render_svg({p}, r.verdict.rules, load_style(), {std::nullopt, A, "pic"});
  CHECK(count(svg, "marker-end") > 0);
  CHECK(svg.find(load_style().arrows.at("5")) != std::string::npos);
  CHECK(svg.find("<text x=\"40\" y=\"40\" font-size=\"14\">E5 pic</text>") != std::string::npos);
}
