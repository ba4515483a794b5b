#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "picdesc/data.hpp"
#include "picdesc/ssengine/chart.hpp"

namespace picdesc::chartviz {

using ssengine::Bidegree;
using ssengine::DifferentialRule;
using ssengine::PagePtr;
using ssengine::Window;

// styles/<name>.json:
//   "glyphs": {"Z": "open-square", "Z/2": "dot", "Z/2[j]": "circled-dot", "*": "numbered"}
//   "lines":  {"h1": "1", "h2": "1/3"}     structure lines, generator name -> slope (checked)
//   "arrows": {"3": "#1f5fa0", "*": "#000000"}
struct ChartStyle {
  std::map<std::string, std::string> glyphs;
  std::map<std::string, std::string> lines;
  std::map<std::string, std::string> arrows;
  int cell = 44;  // pixels per unit
};

ChartStyle style_from_json(const Json& j);
ChartStyle load_style(const std::string& name = "default");

// One glyph per cyclic summand of a page cell; truncated coefficient families collapse to one.
struct Glyph {
  Bidegree at;
  std::string pattern;  // "Z", "Z/2", "Z/2[j]", ...
  std::string label;
  std::vector<std::size_t> members;  // page generator indices
  std::optional<ssengine::Monomial> lead;
};

std::vector<Glyph> page_glyphs(const ssengine::ChartPage& page, const Window& w);

struct RenderOptions {
  std::optional<Window> window;                   // defaults to the page window
  const ssengine::Algebra* lines_algebra = nullptr;  // defaults to the chart's algebra
  std::string title;
};

// Panels side by side, one per page; arrows for the rules whose index equals the panel's page.
// Throws UnknownGlyph, DataError when the window is not inside the page window.
std::string render_svg(const std::vector<PagePtr>& pages, const std::vector<DifferentialRule>& rules,
                       const ChartStyle& style, const RenderOptions& opt = {});

}  // namespace picdesc::chartviz
