#include "picdesc/chartviz/chartviz.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "picdesc/errors.hpp"

namespace picdesc::chartviz {

using ssengine::Algebra;
using ssengine::ChartPage;
using ssengine::Monomial;
using exactalg::Int;

namespace {

const std::set<std::string> kShapes = {"dot", "open-square", "filled-square", "cross", "circled-dot", "numbered"};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '&') o += "&amp;";
    else if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '"') o += "&quot;";
    else o += c;
  }
  return o;
}

std::string base_pattern(const Int& order) { return sgn(order) == 0 ? "Z" : "Z/" + order.get_str(); }

Monomial strip(const Algebra* A, Monomial m, std::string* coeff) {
  if (!A) return m;
  for (std::size_t i = 0; i < A->size(); ++i)
    if (A->gens[i].coefficient && m[i] != 0) {
      if (coeff && coeff->empty()) *coeff = A->gens[i].name;
      m[i] = 0;
    }
  return m;
}

std::optional<std::size_t> lead_index(const std::vector<Int>& v, const std::vector<Int>& orders) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int x = v[i];
    if (i < orders.size() && sgn(orders[i]) > 0) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), orders[i].get_mpz_t());
    if (sgn(x) != 0) return i;
  }
  return std::nullopt;
}

// "1/3" -> (1, 3)
std::pair<long, long> parse_slope(const std::string& s) {
  auto k = s.find('/');
  try {
    if (k == std::string::npos) return {std::stol(s), 1};
    return {std::stol(s.substr(0, k)), std::stol(s.substr(k + 1))};
  } catch (const std::exception&) {
    throw DataError("bad slope '" + s + "'");
  }
}

std::vector<Glyph> glyphs_with_leads(const ChartPage& page, const Window& w, const Algebra* A,
                                     std::map<Bidegree, std::vector<std::set<std::size_t>>>* leads) {
  std::vector<Glyph> out;
  const auto& e2 = page.e2();
  for (const auto& [b, g] : page.cells()) {
    if (!w.contains(b) || g.is_trivial()) continue;
    const auto& basis = e2.cells.at(b);
    const auto orders = e2.orders(b);
    struct Info {
      std::size_t k;
      std::optional<std::size_t> li;
      std::optional<Monomial> lead;
      std::string coeff, stripped, label;
    };
    // group generators by order and stripped lead; a group with a coefficient power is a family
    std::map<std::pair<Int, std::string>, std::vector<Info>> groups;
    for (std::size_t k = 0; k < g.ngens(); ++k) {
      const auto rep = page.representative(b, k);
      Info in{k, lead_index(rep, orders), std::nullopt, "", "", ""};
      if (in.li && basis[*in.li].mono && A) {
        in.lead = strip(A, *basis[*in.li].mono, &in.coeff);
        in.stripped = A->label(*in.lead);
      } else {
        in.stripped = in.li ? basis[*in.li].label : e2.format(b, rep);
      }
      in.label = in.li ? basis[*in.li].label : in.stripped;
      groups[{g.factors()[k], in.stripped}].push_back(in);
    }
    std::vector<std::pair<Glyph, std::set<std::size_t>>> cell;
    for (const auto& [key, members] : groups) {
      std::string coeff;
      for (const auto& m : members)
        if (coeff.empty()) coeff = m.coeff;
      auto one = [&](const Info& m) {
        Glyph gl;
        gl.at = b;
        gl.lead = m.lead;
        gl.pattern = base_pattern(key.first);
        gl.label = m.label;
        return gl;
      };
      if (coeff.empty()) {
        for (const auto& m : members) {
          Glyph gl = one(m);
          gl.members = {m.k};
          cell.push_back({gl, m.li ? std::set<std::size_t>{*m.li} : std::set<std::size_t>{}});
        }
        continue;
      }
      Glyph gl = one(members[0]);
      gl.pattern += "[" + coeff + "]";
      gl.label = key.second + "·" + coeff + "-family";
      std::set<std::size_t> ls;
      for (const auto& m : members) {
        gl.members.push_back(m.k);
        if (m.li) ls.insert(*m.li);
      }
      cell.push_back({gl, ls});
    }
    std::stable_sort(cell.begin(), cell.end(),
                     [](const auto& x, const auto& y) { return x.first.label < y.first.label; });
    for (auto& [gl, ls] : cell) {
      out.push_back(gl);
      if (leads) (*leads)[b].push_back(ls);
    }
  }
  return out;
}

struct Panel {
  int x0, y0;
};

}  // namespace

ChartStyle style_from_json(const Json& j) {
  ChartStyle st;
  try {
    for (auto it = j.at("glyphs").begin(); it != j.at("glyphs").end(); ++it) {
      const std::string shape = it.value().get<std::string>();
      if (!kShapes.count(shape)) throw DataError("unknown glyph shape '" + shape + "'");
      st.glyphs[it.key()] = shape;
    }
    const Json lines = j.value("lines", Json::object()), arrows = j.value("arrows", Json::object());
    for (auto it = lines.begin(); it != lines.end(); ++it) {
      parse_slope(it.value().get<std::string>());
      st.lines[it.key()] = it.value().get<std::string>();
    }
    for (auto it = arrows.begin(); it != arrows.end(); ++it) st.arrows[it.key()] = it.value().get<std::string>();
    st.cell = j.value("cell", 44);
  } catch (const Json::exception& e) {
    throw DataError(std::string("chart style: ") + e.what());
  }
  if (st.cell < 16) throw DataError("chart style: cell size below 16");
  return st;
}

ChartStyle load_style(const std::string& name) { return style_from_json(read_json("styles/" + name + ".json")); }

std::vector<Glyph> page_glyphs(const ChartPage& page, const Window& w) {
  return glyphs_with_leads(page, w, page.e2().algebra.get(), nullptr);
}

std::string render_svg(const std::vector<PagePtr>& pages, const std::vector<DifferentialRule>& rules,
                       const ChartStyle& style, const RenderOptions& opt) {
  if (pages.empty()) throw DataError("nothing to render");
  const Window pw = pages[0]->e2().window;
  const Window w = opt.window.value_or(pw);
  if (w.s_max > pw.s_max || w.stem_min < pw.stem_min || w.stem_max > pw.stem_max)
    throw DataError("render window exceeds the page window");
  if (w.s_max < 0 || w.stem_min > w.stem_max) throw WindowEmpty("render window is empty");
  const Algebra* A = opt.lines_algebra ? opt.lines_algebra : pages[0]->e2().algebra.get();
  const int C = style.cell, margin = 40;
  const int cols = w.stem_max - w.stem_min + 1, rows = w.s_max + 1;
  const int pw_px = cols * C + 2 * margin, ph_px = rows * C + 2 * margin;

  auto glyph_shape = [&](const std::string& pattern) {
    auto it = style.glyphs.find(pattern);
    if (it != style.glyphs.end()) return it->second;
    it = style.glyphs.find("*");
    if (it != style.glyphs.end()) return it->second;
    throw UnknownGlyph("no glyph for order pattern " + pattern);
  };
  auto draw = [](std::ostringstream& o, const std::string& shape, int x, int y, const std::string& pattern) {
    if (shape == "dot") {
      o << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"black\"/>";
    } else if (shape == "open-square" || shape == "filled-square") {
      o << "<rect x=\"" << x - 4 << "\" y=\"" << y - 4 << "\" width=\"8\" height=\"8\" "
        << (shape == "open-square" ? "fill=\"white\" stroke=\"black\"" : "fill=\"black\"") << "/>";
    } else if (shape == "cross") {
      o << "<path d=\"M" << x - 4 << " " << y - 4 << "L" << x + 4 << " " << y + 4 << "M" << x - 4 << " " << y + 4
        << "L" << x + 4 << " " << y - 4 << "\" stroke=\"black\" stroke-width=\"1.5\"/>";
    } else if (shape == "circled-dot") {
      o << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"white\" stroke=\"black\"/>"
        << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2\" fill=\"black\"/>";
    } else {
      std::string n = pattern.substr(pattern.find('/') == std::string::npos ? 0 : pattern.find('/') + 1);
      n = n.substr(0, n.find('['));
      o << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"6\" fill=\"white\" stroke=\"black\"/>"
        << "<text x=\"" << x << "\" y=\"" << y + 3 << "\" font-size=\"7\" text-anchor=\"middle\">" << esc(n)
        << "</text>";
    }
  };

  // line generators: index, bidegree and slope check
  std::vector<std::pair<std::size_t, Bidegree>> line_gens;
  if (A)
    for (const auto& [name, slope] : style.lines) {
      std::size_t gi = A->size();
      for (std::size_t i = 0; i < A->size(); ++i)
        if (A->gens[i].name == name) gi = i;
      if (gi == A->size()) continue;
      const Bidegree d = A->degree(A->unit(gi));
      auto [num, den] = parse_slope(slope);
      if (static_cast<long>(d.s) * den != num * static_cast<long>(d.stem()))
        throw DataError("generator " + name + " does not have slope " + slope);
      line_gens.push_back({gi, d});
    }

  std::set<std::string> used;
  std::ostringstream body;
  for (std::size_t pi = 0; pi < pages.size(); ++pi) {
    const ChartPage& page = *pages[pi];
    const Panel P{static_cast<int>(pi) * pw_px, 20};
    auto X = [&](const Bidegree& b) { return P.x0 + margin + (b.stem() - w.stem_min) * C + C / 2; };
    auto Y = [&](const Bidegree& b) { return P.y0 + margin + (w.s_max - b.s) * C + C / 2; };
    body << "<g id=\"page-" << page.r() << "\">\n";
    body << "<text x=\"" << P.x0 + margin << "\" y=\"" << P.y0 + 20 << "\" font-size=\"14\">E" << page.r()
         << (opt.title.empty() ? "" : " " + esc(opt.title)) << "</text>\n";
    // axes and grid
    const int left = P.x0 + margin, top = P.y0 + margin, right = left + cols * C, bottom = top + rows * C;
    body << "<g stroke=\"#dddddd\" stroke-width=\"0.5\">";
    for (int c = 0; c <= cols; ++c)
      body << "<line x1=\"" << left + c * C << "\" y1=\"" << top << "\" x2=\"" << left + c * C << "\" y2=\""
           << bottom << "\"/>";
    for (int r = 0; r <= rows; ++r)
      body << "<line x1=\"" << left << "\" y1=\"" << top + r * C << "\" x2=\"" << right << "\" y2=\"" << top + r * C
           << "\"/>";
    body << "</g>\n<g font-size=\"9\" fill=\"#444444\">";
    for (int c = 0; c < cols; ++c)
      body << "<text x=\"" << left + c * C + C / 2 << "\" y=\"" << bottom + 12 << "\" text-anchor=\"middle\">"
           << w.stem_min + c << "</text>";
    for (int r = 0; r < rows; ++r)
      body << "<text x=\"" << left - 6 << "\" y=\"" << top + r * C + C / 2 + 3 << "\" text-anchor=\"end\">"
           << w.s_max - r << "</text>";
    body << "<text x=\"" << right << "\" y=\"" << bottom + 26 << "\" text-anchor=\"end\">t-s</text>";
    body << "<text x=\"" << left - 24 << "\" y=\"" << top - 6 << "\">s</text></g>\n";

    std::map<Bidegree, std::vector<std::set<std::size_t>>> leads;
    const auto glyphs = glyphs_with_leads(page, w, A, &leads);
    // positions: stacked vertically in label order
    std::map<Bidegree, int> count, seen;
    for (const auto& g : glyphs) ++count[g.at];
    std::vector<std::pair<int, int>> pos;
    std::map<Bidegree, std::vector<std::size_t>> at_cell;
    for (std::size_t i = 0; i < glyphs.size(); ++i) {
      const auto& g = glyphs[i];
      const int n = count[g.at], k = seen[g.at]++;
      const int step = std::max(2, std::min(8, (C - 8) / std::max(1, n)));
      pos.push_back({X(g.at), Y(g.at) + (2 * k - (n - 1)) * step / 2});
      at_cell[g.at].push_back(i);
    }
    // structure lines
    body << "<g stroke=\"black\" stroke-width=\"0.8\">";
    for (std::size_t i = 0; i < glyphs.size(); ++i) {
      if (!glyphs[i].lead || !A) continue;
      for (const auto& [gi, d] : line_gens) {
        const Bidegree tb = glyphs[i].at + d;
        if (!at_cell.count(tb)) continue;
        auto prod = A->mul(A->mono(*glyphs[i].lead), A->mono(A->unit(gi)));
        if (prod.size() != 1) continue;
        const Monomial target = strip(A, prod.begin()->first, nullptr);
        for (std::size_t j : at_cell[tb])
          if (glyphs[j].lead && *glyphs[j].lead == target)
            body << "<line x1=\"" << pos[i].first << "\" y1=\"" << pos[i].second << "\" x2=\"" << pos[j].first
                 << "\" y2=\"" << pos[j].second << "\"/>";
      }
    }
    body << "</g>\n";
    // differentials
    std::set<std::pair<std::size_t, std::size_t>> drawn;
    auto glyph_for = [&](const Bidegree& b, const std::vector<Int>& v) -> std::optional<std::size_t> {
      if (!at_cell.count(b)) return std::nullopt;
      auto li = lead_index(v, page.e2().orders(b));
      if (!li) return std::nullopt;
      const auto& ls = leads[b];
      for (std::size_t k = 0; k < ls.size(); ++k)
        if (ls[k].count(*li)) return at_cell[b][k];
      return at_cell[b][0];
    };
    auto colour = [&](int r) {
      auto it = style.arrows.find(std::to_string(r));
      if (it != style.arrows.end()) return it->second;
      it = style.arrows.find("*");
      return it != style.arrows.end() ? it->second : std::string("#000000");
    };
    body << "<g stroke=\"" << esc(colour(page.r())) << "\" stroke-width=\"1\" fill=\"none\">";
    for (const auto& rule : rules) {
      if (rule.r != page.r() || !w.contains(rule.source) || !w.contains(rule.target())) continue;
      auto tc = page.coordinates(rule.target(), rule.target_vec);
      if (!tc || exactalg::zero_mod(*tc, page.group(rule.target()).factors())) continue;
      auto sg = glyph_for(rule.source, rule.source_vec), tg = glyph_for(rule.target(), rule.target_vec);
      if (!sg || !tg || !drawn.insert({*sg, *tg}).second) continue;
      body << "<line x1=\"" << pos[*sg].first << "\" y1=\"" << pos[*sg].second << "\" x2=\"" << pos[*tg].first
           << "\" y2=\"" << pos[*tg].second << "\" marker-end=\"url(#arrow)\"/>";
    }
    body << "</g>\n";
    // glyphs on top
    for (std::size_t i = 0; i < glyphs.size(); ++i) {
      const auto& g = glyphs[i];
      used.insert(g.pattern);
      body << "<g><title>" << esc(g.label) << " (" << esc(g.pattern) << ")</title>";
      draw(body, glyph_shape(g.pattern), pos[i].first, pos[i].second, g.pattern);
      body << "</g>\n";
    }
    body << "</g>\n";
  }

  // legend
  const int legend_y = 20 + ph_px + 10;
  const int total_w = static_cast<int>(pages.size()) * pw_px;
  const int total_h = legend_y + 20 + 16 * static_cast<int>(used.size()) + 10;
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << total_w << "\" height=\"" << total_h
    << "\" viewBox=\"0 0 " << total_w << " " << total_h << "\" font-family=\"sans-serif\">\n"
    << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
       "orient=\"auto\"><path d=\"M0 0L10 5L0 10z\" fill=\"context-stroke\"/></marker></defs>\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << body.str() << "<g id=\"legend\" font-size=\"10\">\n<text x=\"" << margin << "\" y=\"" << legend_y
    << "\">legend</text>\n";
  int k = 0;
  for (const auto& p : used) {
    const int y = legend_y + 16 * (k + 1);
    draw(o, glyph_shape(p), margin + 6, y - 3, p);
    o << "<text x=\"" << margin + 18 << "\" y=\"" << y << "\">" << esc(p) << "</text>\n";
    ++k;
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace picdesc::chartviz
