#include "ocs/render.hpp"

#include <algorithm>
#include <sstream>

namespace ocs {

namespace {

constexpr int kPanel = 220;
constexpr int kGap = 24;
constexpr int kMargin = 18;
constexpr int kTitle = 20;
constexpr int kCols = 4;

const char* const kPalette[] = {"#3b6fb5", "#c23b3b", "#3b8f4a", "#b5823b",
                                "#7a4db5", "#3ba8a2"};
constexpr int kPaletteSize = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

int observable_position(const ModelDocument& doc, const std::string& name) {
  for (std::size_t i = 0; i < doc.variables.size(); ++i) {
    if (doc.variables[i].name() == name) return static_cast<int>(i);
  }
  return 0;
}

void add_family_panels(const ModelDocument& doc, const std::string& target,
                       std::vector<RenderPanel>& panels) {
  if (!doc.system) {
    throw UnknownTarget("document declares no families; nothing to render for '" + target +
                        "'");
  }
  const PotentialOutcomeFamily& fam = doc.system->complete_family(target);
  const int color = observable_position(doc, target);
  for (const auto& key : fam.product_image()) {
    const RandomVariable* member = fam.member(key);
    if (!member) continue;  // incomplete families render their declared members
    RenderPanel panel;
    panel.label = member->name();
    panel.values = member->values();
    panel.color_index = color;
    const Event known = identified_set(*doc.system, target, fam.key_assignment(key));
    panel.hatched.resize(doc.space->size());
    for (std::size_t k = 0; k < panel.hatched.size(); ++k) {
      panel.hatched[k] = !known.contains(k);
    }
    panels.push_back(std::move(panel));
  }
}

}  // namespace

RenderPlan plan_render(const ModelDocument& doc, const std::vector<std::string>& select) {
  for (const Atom& a : doc.space->atoms()) {
    if (!doc.geometry.count(a.id)) {
      throw NoGeometry("atom '" + a.id + "' has no region; cannot render '" + doc.name + "'");
    }
  }
  if (select.empty()) throw UnknownVariable("empty render selection");

  RenderPlan plan;
  for (const std::string& token : select) {
    if (token == "families") {
      if (!doc.system) throw UnknownTarget("document declares no families");
      for (const RandomVariable& v : doc.variables) {
        if (doc.system->complete_families().count(v.name())) {
          add_family_panels(doc, v.name(), plan.panels);
        }
      }
    } else if (token.rfind("family:", 0) == 0) {
      add_family_panels(doc, token.substr(7), plan.panels);
    } else {
      const RandomVariable& v = doc.variable(token);
      RenderPanel panel;
      panel.label = v.name();
      panel.values = v.values();
      panel.hatched.assign(doc.space->size(), false);
      panel.color_index = observable_position(doc, token);
      plan.panels.push_back(std::move(panel));
    }
  }
  return plan;
}

std::string render_svg(const ModelDocument& doc, const RenderPlan& plan) {
  const int n = static_cast<int>(plan.panels.size());
  const int cols = std::min(n, kCols);
  const int rows = (n + kCols - 1) / kCols;
  const int width = 2 * kMargin + cols * kPanel + (cols - 1) * kGap;
  const int height = kMargin + rows * (kTitle + kPanel) + (rows - 1) * kGap + kMargin;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<defs>\n"
      << "<pattern id=\"xh\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\">\n"
      << "<line x1=\"0\" y1=\"0\" x2=\"8\" y2=\"8\" stroke=\"#555555\" stroke-width=\"1\"/>\n"
      << "<line x1=\"8\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#555555\" stroke-width=\"1\"/>\n"
      << "</pattern>\n</defs>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";

  for (int i = 0; i < n; ++i) {
    const RenderPanel& panel = plan.panels[i];
    const int ox = kMargin + (i % kCols) * (kPanel + kGap);
    const int oy = kMargin + kTitle + (i / kCols) * (kTitle + kPanel + kGap);
    const char* color = kPalette[panel.color_index % kPaletteSize];

    svg << "<text x=\"" << ox << "\" y=\"" << oy - 6
        << "\" font-family=\"monospace\" font-size=\"12\">" << xml_escape(panel.label)
        << "</text>\n";

    auto path_of = [&](const Polygon& poly) {
      std::string d;
      for (std::size_t v = 0; v < poly.size(); ++v) {
        const Rational px = Rational(ox) + poly[v].x * kPanel;
        const Rational py = Rational(oy) + (Rational(1) - poly[v].y) * kPanel;
        d += (v == 0 ? "M" : "L");
        d += fixed_decimal(px, 3);
        d += " ";
        d += fixed_decimal(py, 3);
      }
      d += "Z";
      return d;
    };

    const auto& atoms = doc.space->atoms();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const Polygon& poly = doc.geometry.at(atoms[k].id);
      svg << "<path d=\"" << path_of(poly) << "\" fill=\"";
      if (panel.values[k] == 1) {
        svg << color << "\" fill-opacity=\"0.45\"";
      } else {
        svg << "none\"";
      }
      svg << " stroke=\"#888888\" stroke-width=\"0.8\"/>\n";
    }
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (!panel.hatched[k]) continue;
      const Polygon& poly = doc.geometry.at(atoms[k].id);
      svg << "<path d=\"" << path_of(poly) << "\" fill=\"url(#xh)\" stroke=\"none\"/>\n";
    }
    svg << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << kPanel << "\" height=\""
        << kPanel << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_svg(const ModelDocument& doc, const std::vector<std::string>& select) {
  return render_svg(doc, plan_render(doc, select));
}

}  // namespace ocs
