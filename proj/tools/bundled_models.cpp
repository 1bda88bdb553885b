#include "bundled_models.hpp"

#include "ocs/errors.hpp"
#include "ocs/system.hpp"

#include <cstdint>
#include <map>
#include <utility>

namespace ocs::models {
namespace {

Rational frac(long num, long den) { return Rational(num) / den; }

Point pt(long xn, long xd, long yn, long yd) { return Point{frac(xn, xd), frac(yn, yd)}; }

// X = 1 on the upper half of the square.
VariableRegions upper_half_x() {
  VariableRegions var;
  var.name = "X";
  var.levels.push_back({0, {{pt(0, 1, 0, 1), pt(1, 1, 0, 1), pt(1, 1, 1, 2), pt(0, 1, 1, 2)}}});
  var.levels.push_back({1, {{pt(0, 1, 1, 2), pt(1, 1, 1, 2), pt(1, 1, 1, 1), pt(0, 1, 1, 1)}}});
  return var;
}

// Y = 1 above the anti-diagonal x + y = 1.
VariableRegions antidiagonal_y() {
  VariableRegions var;
  var.name = "Y";
  var.levels.push_back({0, {{pt(0, 1, 0, 1), pt(1, 1, 0, 1), pt(0, 1, 1, 1)}}});
  var.levels.push_back({1, {{pt(0, 1, 1, 1), pt(1, 1, 0, 1), pt(1, 1, 1, 1)}}});
  return var;
}

// Z = 1 on the left half.
VariableRegions left_half_z() {
  VariableRegions var;
  var.name = "Z";
  var.levels.push_back({0, {{pt(1, 2, 0, 1), pt(1, 1, 0, 1), pt(1, 1, 1, 1), pt(1, 2, 1, 1)}}});
  var.levels.push_back({1, {{pt(0, 1, 0, 1), pt(1, 2, 0, 1), pt(1, 2, 1, 1), pt(0, 1, 1, 1)}}});
  return var;
}

// Rebuilds an atomized document with atoms renamed and reordered per `order`
// ((old id, new id), new order), keeping only the variables in `keep`.
ModelDocument relabel(const ModelDocument& src,
                      const std::vector<std::pair<std::string, std::string>>& order,
                      const std::vector<std::string>& keep) {
  if (order.size() != src.space->size()) {
    throw InvalidAtomId("relabel must cover every atom of '" + src.name + "'");
  }
  std::vector<Atom> atoms;
  std::vector<std::size_t> from;
  for (const auto& [old_id, new_id] : order) {
    auto i = src.space->index_of(old_id);
    if (!i) throw InvalidAtomId("no atom '" + old_id + "' in '" + src.name + "'");
    atoms.push_back(Atom{new_id, src.space->atom(*i).mass});
    from.push_back(*i);
  }
  ModelDocument out;
  out.name = src.name;
  out.space = FiniteProbabilitySpace::make(src.space->label(), std::move(atoms));
  for (const std::string& name : keep) {
    const RandomVariable& v = src.variable(name);
    std::vector<std::int64_t> values;
    values.reserve(from.size());
    for (std::size_t i : from) values.push_back(v.value(i));
    out.variables.emplace_back(name, out.space, std::move(values));
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto it = src.geometry.find(order[k].first);
    if (it != src.geometry.end()) out.geometry.emplace(order[k].second, it->second);
  }
  return out;
}

PotentialOutcomeFamily family_over(
    const ModelDocument& doc, const std::string& target, const std::vector<std::string>& index,
    const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>& members) {
  std::vector<std::vector<std::int64_t>> images;
  for (const std::string& name : index) images.push_back(doc.variable(name).image());
  std::map<std::vector<std::int64_t>, RandomVariable> table;
  for (const auto& [key, values] : members) {
    table.emplace(key, RandomVariable(target, doc.space, values));
  }
  return PotentialOutcomeFamily(target, index, std::move(images), std::move(table));
}

void attach_families(ModelDocument& doc, std::vector<PotentialOutcomeFamily> families) {
  std::map<std::string, PotentialOutcomeFamily> complete;
  for (const PotentialOutcomeFamily& fam : families) {
    complete.emplace(fam.target(), lift_to_complete(doc.space, doc.variables, fam));
  }
  doc.declared_families = std::move(families);
  doc.system = std::make_shared<const ObservableCausalSystem>(doc.space, doc.variables,
                                                              std::move(complete));
}

// The five-atom refinement of square_halves: the X=0, Y=0 region is split at
// x = 1/2 by an auxiliary overlay variable so that potential-outcome variants
// that disagree only on part of that region share one space. The splitter is
// dropped from the final document.
ModelDocument refined_square(const std::string& name) {
  VariableRegions splitter;
  splitter.name = "K";
  splitter.levels.push_back(
      {0, {{pt(0, 1, 0, 1), pt(1, 2, 0, 1), pt(1, 2, 1, 2), pt(0, 1, 1, 1)}}});
  splitter.levels.push_back({1,
                             {{pt(0, 1, 1, 1), pt(1, 1, 0, 1), pt(1, 1, 1, 1)},
                              {pt(1, 2, 0, 1), pt(1, 1, 0, 1), pt(1, 2, 1, 2)}}});
  ModelDocument doc = atomize_geometry(name, {upper_half_x(), antidiagonal_y(), splitter});
  return relabel(doc,
                 {{"X1.Y1.K1", "A"},
                  {"X1.Y0.K0", "B"},
                  {"X0.Y1.K1", "C"},
                  {"X0.Y0.K0", "D1"},
                  {"X0.Y0.K1", "D2"}},
                 {"X", "Y"});
}

// Atom order A, B, C, D1, D2.
ModelDocument po_variant(const std::string& name, std::vector<std::int64_t> y0,
                         std::vector<std::int64_t> y1) {
  ModelDocument doc = refined_square(name);
  std::vector<PotentialOutcomeFamily> families;
  families.push_back(minimal_family(doc.variables, "X", {"X"}));
  families.push_back(family_over(doc, "Y", {"X"}, {{{0}, std::move(y0)}, {{1}, std::move(y1)}}));
  attach_families(doc, std::move(families));
  return doc;
}

// Atom order UL, UR, LL, LR.
ModelDocument quadrants(const std::string& name) {
  ModelDocument doc = atomize_geometry(name, {upper_half_x(), left_half_z()});
  return relabel(
      doc, {{"X1.Z1", "UL"}, {"X1.Z0", "UR"}, {"X0.Z1", "LL"}, {"X0.Z0", "LR"}}, {"X", "Z"});
}

ModelDocument quadrants_variant(
    const std::string& name, std::vector<std::int64_t> y,
    const std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>& members) {
  ModelDocument doc = quadrants(name);
  doc.variables.emplace_back("Y", doc.space, std::move(y));
  std::vector<PotentialOutcomeFamily> families;
  families.push_back(minimal_family(doc.variables, "X", {"X"}));
  families.push_back(minimal_family(doc.variables, "Z", {"Z"}));
  families.push_back(family_over(doc, "Y", {"X", "Z"}, members));
  attach_families(doc, std::move(families));
  return doc;
}

}  // namespace

ModelDocument square_halves() {
  ModelDocument doc = atomize_geometry("square_halves", {upper_half_x(), antidiagonal_y()});
  return relabel(doc, {{"X1.Y1", "A"}, {"X1.Y0", "B"}, {"X0.Y1", "C"}, {"X0.Y0", "D"}},
                 {"X", "Y"});
}

ModelDocument po_null() {
  return po_variant("po_null", {1, 0, 1, 0, 0}, {1, 0, 1, 0, 0});
}

ModelDocument po_effect() {
  return po_variant("po_effect", {1, 1, 1, 0, 0}, {1, 0, 0, 0, 0});
}

ModelDocument po_canceling() {
  return po_variant("po_canceling", {1, 1, 1, 0, 0}, {1, 0, 1, 0, 1});
}

ModelDocument quadrants_joint() {
  // Y is 0 everywhere; each (x, z) member flips exactly the quadrant where
  // that assignment is counterfactual, so no single index moves Y alone.
  return quadrants_variant("quadrants_joint", {0, 0, 0, 0},
                           {{{0, 0}, {1, 0, 0, 0}},
                            {{0, 1}, {0, 1, 0, 0}},
                            {{1, 0}, {0, 0, 1, 0}},
                            {{1, 1}, {0, 0, 0, 1}}});
}

ModelDocument quadrants_zonly() {
  // Members depend on z only: z = 0 selects the upper half, z = 1 the lower.
  return quadrants_variant("quadrants_zonly", {0, 1, 1, 0},
                           {{{0, 0}, {1, 1, 0, 0}},
                            {{0, 1}, {0, 0, 1, 1}},
                            {{1, 0}, {1, 1, 0, 0}},
                            {{1, 1}, {0, 0, 1, 1}}});
}

ModelDocument minimal_two() {
  ModelDocument doc = square_halves();
  doc.name = "minimal_two";
  std::vector<PotentialOutcomeFamily> families;
  families.push_back(minimal_family(doc.variables, "X", {"X", "Y"}));
  families.push_back(minimal_family(doc.variables, "Y", {"X", "Y"}));
  attach_families(doc, std::move(families));
  return doc;
}

ModelDocument grid_match() {
  VariableRegions z1;
  z1.name = "Z1";
  for (long v = 0; v < 9; ++v) {
    const long i = v % 3, j = v / 3;  // column, row; value 3 * row + column
    z1.levels.push_back({v,
                         {{pt(i, 3, j, 3), pt(i + 1, 3, j, 3), pt(i + 1, 3, j + 1, 3),
                           pt(i, 3, j + 1, 3)}}});
  }
  VariableRegions z2;
  z2.name = "Z2";
  for (long w = 0; w < 9; ++w) {
    const long a = w % 3, b = w / 3;  // sub-column, sub-row within each Z1 cell
    LevelSet level{w, {}};
    for (long v = 0; v < 9; ++v) {
      const long i = v % 3, j = v / 3;
      const long x0 = 3 * i + a, y0 = 3 * j + b;  // ninths
      level.pieces.push_back(
          {pt(x0, 9, y0, 9), pt(x0 + 1, 9, y0, 9), pt(x0 + 1, 9, y0 + 1, 9), pt(x0, 9, y0 + 1, 9)});
    }
    z2.levels.push_back(std::move(level));
  }
  ModelDocument doc =
      atomize_geometry("grid_match", {upper_half_x(), antidiagonal_y(), std::move(z1),
                                      std::move(z2)});
  doc.matching = MatchConfig{"X", "Y", {"Z1", "Z2"}};
  return doc;
}

ModelDocument match_bias() {
  // in_* atoms carry Z = 1 (both treatment arms present), out_* atoms Z = 0
  // (control only). Arm means inside Z = 1 are 3/4 vs 1/4 while the full
  // contrast cancels, so exact matching on Z has limit 1/2 despite a zero
  // causal mean contrast.
  ModelDocument doc;
  doc.name = "match_bias";
  doc.space = FiniteProbabilitySpace::make(
      "match_bias", {Atom{"in_t1", frac(3, 16)}, Atom{"in_t0", frac(1, 16)},
                     Atom{"in_c1", frac(1, 16)}, Atom{"in_c0", frac(3, 16)},
                     Atom{"out_c1", frac(1, 4)}, Atom{"out_c0", frac(1, 4)}});
  doc.variables.emplace_back("X", doc.space, std::vector<std::int64_t>{1, 1, 0, 0, 0, 0});
  doc.variables.emplace_back("Z", doc.space, std::vector<std::int64_t>{1, 1, 1, 1, 0, 0});
  doc.variables.emplace_back("Y", doc.space, std::vector<std::int64_t>{1, 0, 1, 0, 1, 0});
  std::vector<PotentialOutcomeFamily> families;
  families.push_back(minimal_family(doc.variables, "X", {"X"}));
  families.push_back(minimal_family(doc.variables, "Z", {"Z"}));
  families.push_back(family_over(doc, "Y", {"X"},
                                 {{{0}, {1, 0, 1, 0, 1, 0}}, {{1}, {1, 0, 1, 0, 0, 1}}}));
  attach_families(doc, std::move(families));
  doc.matching = MatchConfig{"X", "Y", {"Z"}};
  return doc;
}

nlohmann::ordered_json correlated_pair_randomizer() {
  nlohmann::ordered_json r;
  r["name"] = "correlated_pair";
  r["atoms"] = nlohmann::ordered_json::array({{{"id", "r00"}, {"mass", "1/3"}},
                                              {{"id", "r01"}, {"mass", "1/6"}},
                                              {{"id", "r10"}, {"mass", "1/6"}},
                                              {{"id", "r11"}, {"mass", "1/3"}}});
  r["variables"] = {{"X", {{"r00", 0}, {"r01", 0}, {"r10", 1}, {"r11", 1}}},
                    {"Z", {{"r00", 0}, {"r01", 1}, {"r10", 0}, {"r11", 1}}}};
  return r;
}

std::vector<std::pair<std::string, std::string>> bundle() {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&out](const ModelDocument& doc) {
    out.emplace_back(doc.name + ".json", print_model_text(doc));
  };
  add(square_halves());
  add(po_null());
  add(po_effect());
  add(po_canceling());
  add(quadrants_joint());
  add(quadrants_zonly());
  add(minimal_two());
  add(grid_match());
  add(match_bias());
  out.emplace_back("randomizers/correlated_pair.json",
                   correlated_pair_randomizer().dump(2) + "\n");
  return out;
}

}  // namespace ocs::models
