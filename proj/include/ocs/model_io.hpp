#pragma once

#include "ocs/geometry.hpp"
#include "ocs/matching.hpp"
#include "ocs/randomization.hpp"
#include "ocs/system.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ocs {

// One self-contained model: space, observables, and optionally unit-square
// geometry per atom, potential-outcome families, a randomizer and a matching
// setup. Rationals travel as "p/q" strings; documents carry "format": 1.
struct ModelDocument {
  std::string name;
  SpacePtr space;
  std::vector<RandomVariable> variables;
  std::map<std::string, Polygon> geometry;  // atom id -> region; may be empty or partial

  // Families exactly as declared (possibly over partial index sets).
  std::vector<PotentialOutcomeFamily> declared_families;

  // Built whenever the document declares families, with each declared family
  // lifted to a complete one. Null for observables-only documents.
  std::shared_ptr<const ObservableCausalSystem> system;

  std::optional<RandomizerSpec> randomizer;
  std::optional<MatchConfig> matching;

  const RandomVariable& variable(const std::string& name) const;  // UnknownVariable
  bool has_variable(const std::string& name) const;
};

// Structural problems throw SchemaError with a "$.path"; semantic problems
// throw the owning module's error (DuplicateAtomId, MassSumNotOne,
// GeometryMassMismatch, ...) with the offending id in the message. Axiom
// violations do not throw; run validate(*doc.system).
ModelDocument parse_model(const nlohmann::ordered_json& j);
ModelDocument parse_model_file(const std::string& path);  // + IoError

// Canonical serialization; parsing it back reproduces the document. Byte
// deterministic for a given document.
nlohmann::ordered_json print_model(const ModelDocument& doc);
std::string print_model_text(const ModelDocument& doc);

// Written via a temp file in the same directory plus rename, so a crash never
// leaves a half-written file at `path`.
void write_file_atomic(const std::string& path, const std::string& bytes);
void write_model_file(const std::string& path, const ModelDocument& doc);

// Level sets of one variable over the unit square: each value owns a list of
// disjoint convex pieces, and together the values tile the square exactly.
struct LevelSet {
  std::int64_t value;
  std::vector<Polygon> pieces;
};

struct VariableRegions {
  std::string name;
  std::vector<LevelSet> levels;
};

// Common refinement of the variables' level sets: every cell of the overlay
// becomes an atom with mass equal to its exact area, carrying each variable's
// value on it and its polygon as geometry. Zero-area intersections are
// dropped. Throws NonConvexPolygon for pieces that are not convex and
// NonPartition (with the offending area) when a variable's pieces overlap or
// fail to cover the square.
ModelDocument atomize_geometry(const std::string& name,
                               const std::vector<VariableRegions>& variables);

// Parses a randomizer description ({"atoms": [...], "variables": {...}}).
RandomizerSpec parse_randomizer(const nlohmann::ordered_json& j, const std::string& path_prefix);
RandomizerSpec parse_randomizer_file(const std::string& path);

}  // namespace ocs
