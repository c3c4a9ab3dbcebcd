#pragma once

#include <variant>
#include <vector>

#include "shiftlab/graph.hpp"
#include "shiftlab/loops.hpp"

namespace shiftlab {

/// Nested finite graphs G_0 ⊂ G_1 ⊂ ... ; inclusions[i] sends the vertices of
/// level i to level i+1.
struct Exhaustion {
  std::vector<FiniteGraph> levels;
  std::vector<std::vector<Symbol>> inclusions;
  bool strictly_nested = true;
};

// Levels are matched by vertex name.  Throws InputError when a level is not
// irreducible or the levels are not nested.
Exhaustion make_exhaustion(std::vector<FiniteGraph> levels);

using ShiftPresentation = std::variant<FiniteGraph, LoopSystem, Exhaustion>;

unsigned presentation_period(const ShiftPresentation& p);

}  // namespace shiftlab
