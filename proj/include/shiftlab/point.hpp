#pragma once

#include <string>

#include "shiftlab/graph.hpp"

namespace shiftlab {

/// ... left left core right right ...  with core[0] at index core_start.
/// An empty core is allowed; both period words must be nonempty.
struct EventuallyPeriodicPoint {
  Word left;
  Word core;
  Word right;
  long core_start = 0;

  static EventuallyPeriodicPoint periodic(const Word& w);

  Symbol at(long i) const;
  // x[from, to), to >= from.
  Word window(long from, long to) const;
  long core_end() const { return core_start + static_cast<long>(core.size()); }

  // S^k x.
  EventuallyPeriodicPoint shifted(long k) const;
  bool admissible(const FiniteGraph& g) const;

  std::string format(const FiniteGraph& g) const;
};

// Pointwise equality of the bi-infinite sequences.
bool operator==(const EventuallyPeriodicPoint& a, const EventuallyPeriodicPoint& b);
inline bool operator!=(const EventuallyPeriodicPoint& a, const EventuallyPeriodicPoint& b) {
  return !(a == b);
}

// Does w occur in the bi-infinite repetition of the period word p?
bool occurs_cyclically(const Word& p, const Word& w);

}  // namespace shiftlab
