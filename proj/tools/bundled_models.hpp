#pragma once

// Builders for the model documents shipped under models/. gen-models writes
// them to disk; the tests rebuild them and compare against the committed
// files, which pins both the builders and the serializer.

#include "ocs/model_io.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ocs::models {

// Two binary observables on the unit square: X is the upper half, Y the
// region above the anti-diagonal. Atoms A (X=1,Y=1), B (1,0), C (0,1),
// D (0,0) with masses 3/8, 1/8, 1/8, 3/8. Observables only.
ModelDocument square_halves();

// The same square refined to five atoms (D split at x = 1/2) so that all
// three bundled potential-outcome variants fit on one space. Each carries a
// Y family indexed by X plus a minimal X family.
ModelDocument po_null();       // y0 = y1 = Y: no effect anywhere
ModelDocument po_effect();     // effect on B and C: mean contrast -1/4
ModelDocument po_canceling();  // opposite effects on B and D2: mean contrast 0

// Four quadrant atoms with X = upper half, Z = left half.
ModelDocument quadrants_joint();  // Y == 0; its (X,Z) family flips one quadrant each
ModelDocument quadrants_zonly();  // Y's (X,Z) family depends on z only

// square_halves plus minimal families for X and Y over (X, Y): the fully
// specified two-observable system used for identification displays.
ModelDocument minimal_two();

// square_halves overlaid with a 3x3 cell index Z1 and a 9x9 sub-cell index
// Z2 (100 atoms); carries a matching section over (Z1, Z2).
ModelDocument grid_match();

// Six atoms, no geometry: treatment arms balanced so the causal mean
// contrast is 0, but the off-support potential outcomes differ, so exact
// matching on Z converges to 1/2 instead.
ModelDocument match_bias();

// A correlated two-treatment randomizer (joint masses 1/3, 1/6, 1/6, 1/3).
nlohmann::ordered_json correlated_pair_randomizer();

// (relative path, file bytes) for everything above.
std::vector<std::pair<std::string, std::string>> bundle();

}  // namespace ocs::models
