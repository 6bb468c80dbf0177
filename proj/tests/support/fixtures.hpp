#pragma once

#include "spdi/model.hpp"

namespace fixtures {

// [0,2]x[0,1] split at x = 1, flow (1,0) everywhere.
// Edges: left e1_4, middle e2_5, right e3_6.
spdi::Spdi hcorridor();

// Unit square cut along both diagonals; flow (1,0.2) in the bottom triangle,
// rotated +90 degrees per triangle counterclockwise.
// Diagonal half-edges: e1_5, e2_5, e3_5, e4_5 (cycle e2_5 e3_5 e4_5 e1_5).
spdi::Spdi spinbox();

// One unit square with the given cone.
spdi::Spdi unit_square(spdi::Vector2 dyn_l, spdi::Vector2 dyn_r);

spdi::EdgeId edge(const spdi::Spdi& s, const char* name);

}  // namespace fixtures
