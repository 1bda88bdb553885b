#pragma once

#include "ocs/rational.hpp"

#include <stdexcept>
#include <string>

namespace ocs {

// Base class for every contract violation this library throws. Axiom
// violations found by validate() are data, not exceptions; see system.hpp.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define OCS_ERROR_TYPE(NAME)                                    \
  struct NAME : Error {                                         \
    explicit NAME(const std::string& m) : Error(m) {}           \
  }

// space construction / measure
OCS_ERROR_TYPE(DuplicateAtomId);
OCS_ERROR_TYPE(NegativeMass);
OCS_ERROR_TYPE(InvalidAtomId);
OCS_ERROR_TYPE(ForeignEvent);

// random variables and laws
OCS_ERROR_TYPE(MixedSpaces);
OCS_ERROR_TYPE(ZeroMeasureConditioningEvent);
OCS_ERROR_TYPE(NameMismatch);
OCS_ERROR_TYPE(DegenerateTreatment);
OCS_ERROR_TYPE(NonBinaryTreatment);
OCS_ERROR_TYPE(IncompleteVariable);

// causal systems
OCS_ERROR_TYPE(UnknownVariable);
OCS_ERROR_TYPE(UnknownTarget);
OCS_ERROR_TYPE(UnknownIndexVariable);
OCS_ERROR_TYPE(SelfReferentialSource);
OCS_ERROR_TYPE(IncompleteFamily);

// randomization
OCS_ERROR_TYPE(DegenerateRandomizer);
OCS_ERROR_TYPE(ImageMismatch);

// matching
OCS_ERROR_TYPE(UnknownCovariate);
OCS_ERROR_TYPE(NoPairsFound);

// sampling
OCS_ERROR_TYPE(DegenerateSample);

// model documents and geometry
OCS_ERROR_TYPE(IoError);
OCS_ERROR_TYPE(NonConvexPolygon);
OCS_ERROR_TYPE(GeometryMassMismatch);
OCS_ERROR_TYPE(NoGeometry);

#undef OCS_ERROR_TYPE

// Malformed document shape. `path` is a JSON-pointer-ish location ("$.atoms[2].mass").
struct SchemaError : Error {
  std::string path;
  SchemaError(std::string where, const std::string& m)
      : Error(where + ": " + m), path(std::move(where)) {}
};

// Atom masses must sum to exactly 1; `deficit` is 1 minus the actual sum.
struct MassSumNotOne : Error {
  Rational deficit;
  MassSumNotOne(const std::string& m, Rational d) : Error(m), deficit(std::move(d)) {}
};

// A variable's level sets fail to tile the unit square: either two pieces
// overlap (offending = overlap area) or the total falls short (offending =
// the gap). Exact, so a sliver of any positive size is reported.
struct NonPartition : Error {
  Rational offending;
  NonPartition(const std::string& m, Rational area) : Error(m), offending(std::move(area)) {}
};

}  // namespace ocs
