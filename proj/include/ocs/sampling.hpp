#pragma once

#include "ocs/random_variable.hpp"
#include "ocs/space.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ocs {

// A reproducible draw of atoms: same space, seed and n always give the same
// index sequence, bit for bit.
struct SampleBatch {
  SpacePtr space;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> draws;  // indices into the space's atom order

  std::size_t size() const { return draws.size(); }
};

// Inverse-CDF sampling over the fixed atom order: each 64-bit output u of
// splitmix64 selects the first atom whose cumulative mass exceeds u / 2^64,
// compared exactly. Zero-mass atoms are never drawn.
SampleBatch sample_atoms(const SpacePtr& space, std::size_t n, std::uint64_t seed);

// Difference of the arm means of y in the sample. Decimal by nature. Throws
// DegenerateSample if either arm of x is absent from the batch, MixedSpaces
// if the variables live elsewhere, NonBinaryTreatment unless image(x) is
// within {0, 1}.
double empirical_aoe(const SampleBatch& batch, const RandomVariable& x, const RandomVariable& y);

// Columnar text form: three header lines carrying space label, seed and n,
// then one atom id per line.
void write_batch(std::ostream& out, const SampleBatch& batch);

// Parses what write_batch emits and resolves ids against `space`. Throws
// SchemaError (with a line location) on malformed headers, count mismatches
// or unknown atom ids.
SampleBatch read_batch(std::istream& in, const SpacePtr& space);

}  // namespace ocs
