#pragma once

#include "ocs/model_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ocs {

// What one square panel shows: a variable's values per atom, plus which atoms
// to cross-hatch (family panels hatch everything outside the member's
// identified set).
struct RenderPanel {
  std::string label;
  std::vector<std::int64_t> values;  // per atom, space order
  std::vector<bool> hatched;         // per atom
  int color_index = 0;
};

struct RenderPlan {
  std::vector<RenderPanel> panels;
};

// Selector tokens: an observable name; "family:<target>" for every member of
// the target's complete family; "families" for all targets' families in
// observable order. Requires geometry for every atom (NoGeometry) and, for
// family tokens, a document with families (UnknownTarget).
RenderPlan plan_render(const ModelDocument& doc, const std::vector<std::string>& select);

// Deterministic SVG: same document and selection, same bytes. Level-1 sets
// are shaded, other levels outlined only, hatched atoms overlaid with a
// cross-hatch pattern. Coordinates are exact rationals rounded to fixed
// decimals in integer arithmetic, so no platform float formatting leaks in.
std::string render_svg(const ModelDocument& doc, const RenderPlan& plan);
std::string render_svg(const ModelDocument& doc, const std::vector<std::string>& select);

}  // namespace ocs
