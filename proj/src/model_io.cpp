#include "ocs/model_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ocs {

namespace {

using nlohmann::ordered_json;

const ordered_json& field(const ordered_json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key, "missing");
  return *it;
}

const ordered_json* optional_field(const ordered_json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string as_string(const ordered_json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

std::int64_t as_int(const ordered_json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw SchemaError(path, "expected an integer");
  }
  return j.get<std::int64_t>();
}

Rational as_rational(const ordered_json& j, const std::string& path) {
  try {
    return parse_rational(as_string(j, path));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

std::vector<Atom> parse_atoms(const ordered_json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    atoms.push_back(Atom{as_string(field(j[i], "id", p), p + ".id"),
                         as_rational(field(j[i], "mass", p), p + ".mass")});
  }
  return atoms;
}

std::map<std::string, std::int64_t> parse_atom_map(const ordered_json& j, const SpacePtr& space,
                                                   const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object of atom id -> value");
  std::map<std::string, std::int64_t> out;
  for (const auto& [id, value] : j.items()) {
    if (!space->index_of(id)) throw SchemaError(path + "." + id, "unknown atom id");
    out[id] = as_int(value, path + "." + id);
  }
  return out;
}

std::vector<RandomVariable> parse_variables(const ordered_json& j, const SpacePtr& space,
                                            const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object of variables");
  std::vector<RandomVariable> vars;
  for (const auto& [name, values] : j.items()) {
    vars.push_back(RandomVariable::from_map(space, name,
                                            parse_atom_map(values, space, path + "." + name)));
  }
  return vars;
}

Polygon parse_polygon(const ordered_json& j, const std::string& path) {
  if (!j.is_array() || j.size() < 3) {
    throw SchemaError(path, "expected an array of at least three vertices");
  }
  Polygon poly;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) {
      throw SchemaError(p, "expected a [x, y] pair");
    }
    poly.push_back(Point{as_rational(j[i][0], p + "[0]"), as_rational(j[i][1], p + "[1]")});
  }
  return poly;
}

const RandomVariable* find_var(const std::vector<RandomVariable>& vars,
                               const std::string& name) {
  for (const RandomVariable& v : vars) {
    if (v.name() == name) return &v;
  }
  return nullptr;
}

std::vector<std::int64_t> parse_member_key(const std::string& text, std::size_t arity,
                                           const std::string& path) {
  std::vector<std::int64_t> key;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      key.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw SchemaError(path, "bad assignment key '" + text + "'");
    }
  }
  if (key.size() != arity) {
    throw SchemaError(path, "key '" + text + "' should list " + std::to_string(arity) +
                                " values");
  }
  return key;
}

PotentialOutcomeFamily parse_family(const ordered_json& j, const SpacePtr& space,
                                    const std::vector<RandomVariable>& vars,
                                    const std::string& path) {
  const std::string target = as_string(field(j, "target", path), path + ".target");
  if (!find_var(vars, target)) {
    throw UnknownTarget("family target '" + target + "' is not a variable (" + path + ")");
  }
  const ordered_json& index = field(j, "index", path);
  if (!index.is_array() || index.empty()) {
    throw SchemaError(path + ".index", "expected a non-empty array of variable names");
  }
  std::vector<std::string> index_names;
  std::vector<std::vector<std::int64_t>> index_images;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const std::string name =
        as_string(index[i], path + ".index[" + std::to_string(i) + "]");
    const RandomVariable* v = find_var(vars, name);
    if (!v) {
      throw UnknownIndexVariable("family index '" + name + "' is not a variable (" + path +
                                 ")");
    }
    index_names.push_back(name);
    index_images.push_back(v->image());
  }

  const ordered_json& members = field(j, "members", path);
  if (!members.is_object() || members.empty()) {
    throw SchemaError(path + ".members", "expected a non-empty object of assignment -> values");
  }
  std::map<std::vector<std::int64_t>, RandomVariable> table;
  for (const auto& [key_text, values] : members.items()) {
    const std::string p = path + ".members." + key_text;
    auto key = parse_member_key(key_text, index_names.size(), p);
    if (table.count(key)) throw SchemaError(p, "duplicate assignment");
    table.emplace(key, RandomVariable::from_map(space, target,
                                                parse_atom_map(values, space, p)));
  }
  return PotentialOutcomeFamily(target, std::move(index_names), std::move(index_images),
                                std::move(table));
}

}  // namespace

const RandomVariable& ModelDocument::variable(const std::string& name) const {
  const RandomVariable* v = find_var(variables, name);
  if (!v) throw UnknownVariable("no variable named '" + name + "'");
  return *v;
}

bool ModelDocument::has_variable(const std::string& name) const {
  return find_var(variables, name) != nullptr;
}

RandomizerSpec parse_randomizer(const ordered_json& j, const std::string& path_prefix) {
  RandomizerSpec spec;
  std::string label = "randomizer";
  if (const ordered_json* name = optional_field(j, "name")) {
    label = as_string(*name, path_prefix + ".name");
  }
  spec.space = FiniteProbabilitySpace::make(
      label, parse_atoms(field(j, "atoms", path_prefix), path_prefix + ".atoms"));
  spec.arms = parse_variables(field(j, "variables", path_prefix), spec.space,
                              path_prefix + ".variables");
  if (spec.arms.empty()) {
    throw SchemaError(path_prefix + ".variables", "randomizer needs at least one variable");
  }
  return spec;
}

namespace {

// Stream failures (unreadable file, directory passed as a path) surface from
// the JSON parser as assorted exceptions; fold them all into SchemaError.
ordered_json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

RandomizerSpec parse_randomizer_file(const std::string& path) {
  return parse_randomizer(parse_json_file(path), "$");
}

ModelDocument parse_model(const ordered_json& j) {
  if (!j.is_object()) throw SchemaError("$", "expected an object");
  const std::int64_t format = as_int(field(j, "format", "$"), "$.format");
  if (format != 1) {
    throw SchemaError("$.format", "unsupported format " + std::to_string(format));
  }

  ModelDocument doc;
  doc.name = "model";
  if (const ordered_json* name = optional_field(j, "name")) {
    doc.name = as_string(*name, "$.name");
  }

  doc.space = FiniteProbabilitySpace::make(doc.name, parse_atoms(field(j, "atoms", "$"),
                                                                 "$.atoms"));
  doc.variables = parse_variables(field(j, "variables", "$"), doc.space, "$.variables");

  if (const ordered_json* geometry = optional_field(j, "geometry")) {
    if (!geometry->is_object()) throw SchemaError("$.geometry", "expected an object");
    for (const auto& [id, poly_json] : geometry->items()) {
      auto idx = doc.space->index_of(id);
      if (!idx) throw SchemaError("$.geometry." + id, "unknown atom id");
      Polygon poly = parse_polygon(poly_json, "$.geometry." + id);
      const Rational a = area(poly);
      if (a != doc.space->atom(*idx).mass) {
        throw GeometryMassMismatch("region of atom '" + id + "' has area " + to_string(a) +
                                   " but the atom's mass is " +
                                   to_string(doc.space->atom(*idx).mass));
      }
      doc.geometry.emplace(id, std::move(poly));
    }
  }

  if (const ordered_json* families = optional_field(j, "families")) {
    if (!families->is_array()) throw SchemaError("$.families", "expected an array");
    std::set<std::string> targets;
    std::map<std::string, PotentialOutcomeFamily> complete;
    for (std::size_t i = 0; i < families->size(); ++i) {
      const std::string path = "$.families[" + std::to_string(i) + "]";
      PotentialOutcomeFamily fam = parse_family((*families)[i], doc.space, doc.variables, path);
      if (!targets.insert(fam.target()).second) {
        throw SchemaError(path, "second family for target '" + fam.target() + "'");
      }
      complete.emplace(fam.target(), lift_to_complete(doc.space, doc.variables, fam));
      doc.declared_families.push_back(std::move(fam));
    }
    doc.system = std::make_shared<const ObservableCausalSystem>(doc.space, doc.variables,
                                                                std::move(complete));
  }

  if (const ordered_json* randomizer = optional_field(j, "randomizer")) {
    doc.randomizer = parse_randomizer(*randomizer, "$.randomizer");
  }

  if (const ordered_json* matching = optional_field(j, "matching")) {
    MatchConfig mc;
    mc.treatment = as_string(field(*matching, "treatment", "$.matching"),
                             "$.matching.treatment");
    if (!doc.has_variable(mc.treatment)) {
      throw UnknownVariable("matching treatment '" + mc.treatment + "' is not a variable");
    }
    mc.outcome = as_string(field(*matching, "outcome", "$.matching"), "$.matching.outcome");
    if (!doc.has_variable(mc.outcome)) {
      throw UnknownVariable("matching outcome '" + mc.outcome + "' is not a variable");
    }
    if (mc.treatment == mc.outcome) {
      throw SchemaError("$.matching", "treatment and outcome must differ");
    }
    const ordered_json& covs = field(*matching, "covariates", "$.matching");
    if (!covs.is_array() || covs.empty()) {
      throw SchemaError("$.matching.covariates", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < covs.size(); ++i) {
      const std::string path = "$.matching.covariates[" + std::to_string(i) + "]";
      const std::string name = as_string(covs[i], path);
      if (!doc.has_variable(name)) {
        throw UnknownCovariate("matching covariate '" + name + "' is not a variable");
      }
      if (name == mc.treatment || name == mc.outcome) {
        throw SchemaError(path, "covariates must exclude treatment and outcome");
      }
      if (std::find(mc.covariates.begin(), mc.covariates.end(), name) !=
          mc.covariates.end()) {
        throw SchemaError(path, "repeated covariate '" + name + "'");
      }
      mc.covariates.push_back(name);
    }
    doc.matching = std::move(mc);
  }

  return doc;
}

ModelDocument parse_model_file(const std::string& path) {
  return parse_model(parse_json_file(path));
}

namespace {

ordered_json atoms_json(const SpacePtr& space) {
  ordered_json atoms = ordered_json::array();
  for (const Atom& a : space->atoms()) {
    atoms.push_back({{"id", a.id}, {"mass", to_string(a.mass)}});
  }
  return atoms;
}

ordered_json atom_map_json(const SpacePtr& space, const RandomVariable& v) {
  ordered_json out = ordered_json::object();
  for (std::size_t k = 0; k < space->size(); ++k) out[space->atom(k).id] = v.value(k);
  return out;
}

}  // namespace

ordered_json print_model(const ModelDocument& doc) {
  ordered_json out;
  out["format"] = 1;
  out["name"] = doc.name;
  out["atoms"] = atoms_json(doc.space);

  ordered_json vars = ordered_json::object();
  for (const RandomVariable& v : doc.variables) {
    vars[v.name()] = atom_map_json(doc.space, v);
  }
  out["variables"] = std::move(vars);

  if (!doc.geometry.empty()) {
    ordered_json geometry = ordered_json::object();
    for (const Atom& a : doc.space->atoms()) {
      auto it = doc.geometry.find(a.id);
      if (it == doc.geometry.end()) continue;
      ordered_json poly = ordered_json::array();
      for (const Point& p : it->second) {
        poly.push_back({to_string(p.x), to_string(p.y)});
      }
      geometry[a.id] = std::move(poly);
    }
    out["geometry"] = std::move(geometry);
  }

  if (doc.system) {
    ordered_json families = ordered_json::array();
    for (const PotentialOutcomeFamily& fam : doc.declared_families) {
      ordered_json f;
      f["target"] = fam.target();
      f["index"] = fam.index_names();
      ordered_json members = ordered_json::object();
      for (const auto& [key, member] : fam.members()) {
        std::string key_text;
        for (std::size_t i = 0; i < key.size(); ++i) {
          if (i) key_text += ",";
          key_text += std::to_string(key[i]);
        }
        members[key_text] = atom_map_json(doc.space, member);
      }
      f["members"] = std::move(members);
      families.push_back(std::move(f));
    }
    out["families"] = std::move(families);
  }

  if (doc.randomizer) {
    ordered_json r;
    r["name"] = doc.randomizer->space->label();
    r["atoms"] = atoms_json(doc.randomizer->space);
    ordered_json arms = ordered_json::object();
    for (const RandomVariable& v : doc.randomizer->arms) {
      arms[v.name()] = atom_map_json(doc.randomizer->space, v);
    }
    r["variables"] = std::move(arms);
    out["randomizer"] = std::move(r);
  }

  if (doc.matching) {
    out["matching"] = {{"treatment", doc.matching->treatment},
                       {"outcome", doc.matching->outcome},
                       {"covariates", doc.matching->covariates}};
  }
  return out;
}

std::string print_model_text(const ModelDocument& doc) { return print_model(doc).dump(2) + "\n"; }

void write_file_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

void write_model_file(const std::string& path, const ModelDocument& doc) {
  write_file_atomic(path, print_model_text(doc));
}

ModelDocument atomize_geometry(const std::string& name,
                               const std::vector<VariableRegions>& variables) {
  if (variables.empty()) {
    throw std::invalid_argument("atomize_geometry needs at least one variable");
  }
  std::set<std::string> names;
  for (const VariableRegions& var : variables) {
    if (!names.insert(var.name).second) {
      throw NameMismatch("repeated variable '" + var.name + "'");
    }
    if (var.levels.empty()) {
      throw std::invalid_argument("variable '" + var.name + "' has no level sets");
    }
    std::set<std::int64_t> values;
    for (const LevelSet& level : var.levels) {
      if (!values.insert(level.value).second) {
        throw std::invalid_argument("variable '" + var.name + "' repeats the value " +
                                    std::to_string(level.value));
      }
      for (std::size_t p = 0; p < level.pieces.size(); ++p) {
        if (!is_convex(level.pieces[p])) {
          throw NonConvexPolygon("variable '" + var.name + "', value " +
                                 std::to_string(level.value) + ", piece " +
                                 std::to_string(p) + " is not convex");
        }
      }
    }

    // the variable's pieces must tile the square: pairwise disjoint, total 1
    std::vector<const Polygon*> pieces;
    for (const LevelSet& level : var.levels) {
      for (const Polygon& p : level.pieces) pieces.push_back(&p);
    }
    Rational total = 0;
    for (const Polygon* p : pieces) total += area(*p);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      for (std::size_t j = i + 1; j < pieces.size(); ++j) {
        const Rational overlap = area(clip_convex(*pieces[i], *pieces[j]));
        if (overlap > 0) {
          throw NonPartition("pieces of variable '" + var.name + "' overlap with area " +
                                 to_string(overlap),
                             overlap);
        }
      }
    }
    if (total != 1) {
      const Rational gap = Rational(1) - total;
      throw NonPartition("level sets of variable '" + var.name + "' cover area " +
                             to_string(total) + ", leaving " + to_string(gap),
                         gap);
    }
  }

  struct Cell {
    Polygon poly;
    std::vector<std::int64_t> values;
  };
  std::vector<Cell> cells{{unit_square(), {}}};
  for (const VariableRegions& var : variables) {
    std::vector<LevelSet> levels = var.levels;
    std::sort(levels.begin(), levels.end(),
              [](const LevelSet& a, const LevelSet& b) { return a.value < b.value; });
    std::vector<Cell> next;
    for (const Cell& cell : cells) {
      for (const LevelSet& level : levels) {
        for (const Polygon& piece : level.pieces) {
          Polygon cut = clip_convex(cell.poly, piece);
          if (area(cut) == 0) continue;  // zero-area sliver, dropped
          Cell c{dedupe(oriented_ccw(cut)), cell.values};
          c.values.push_back(level.value);
          next.push_back(std::move(c));
        }
      }
    }
    cells = std::move(next);
  }

  auto combo_id = [&](const std::vector<std::int64_t>& values) {
    std::string id;
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (i) id += ".";
      id += variables[i].name + std::to_string(values[i]);
    }
    return id;
  };
  std::map<std::vector<std::int64_t>, std::size_t> combo_counts;
  for (const Cell& c : cells) ++combo_counts[c.values];

  ModelDocument doc;
  doc.name = name;
  std::vector<Atom> atoms;
  std::vector<std::string> ids;
  std::map<std::vector<std::int64_t>, std::size_t> seen;
  for (const Cell& c : cells) {
    std::string id = combo_id(c.values);
    if (combo_counts[c.values] > 1) id += "~" + std::to_string(seen[c.values]++);
    atoms.push_back(Atom{id, area(c.poly)});
    ids.push_back(std::move(id));
  }
  doc.space = FiniteProbabilitySpace::make(name, std::move(atoms));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    doc.geometry.emplace(ids[i], cells[i].poly);
  }
  for (std::size_t v = 0; v < variables.size(); ++v) {
    std::vector<std::int64_t> values;
    values.reserve(cells.size());
    for (const Cell& c : cells) values.push_back(c.values[v]);
    doc.variables.emplace_back(variables[v].name, doc.space, std::move(values));
  }
  return doc;
}

}  // namespace ocs
