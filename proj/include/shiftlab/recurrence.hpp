#pragma once

#include <optional>
#include <string>

#include "shiftlab/loops.hpp"
#include "shiftlab/series.hpp"

namespace shiftlab {

enum class Recurrence { transient, null_recurrent, positive_recurrent, spr, indeterminate };
std::string to_string(Recurrence r);

/// Verdict from the first-return series F(z) = sum_n w_n z^n at the base
/// vertex, w_n the total weight of first returns of length n.  Every number
/// is an enclosure; a verdict is only issued when the enclosures separate
/// the cases.
struct RecurrenceClass {
  Recurrence verdict = Recurrence::indeterminate;
  double radius = 0.0;          // R, +inf for entire F
  Interval f_at_radius;         // F(R); hi = +inf when divergent
  Interval df_at_radius;        // F'(R)
  std::optional<Interval> root; // z* with F(z*) = 1
  std::optional<Interval> df_at_root;
  std::optional<Interval> lambda;  // 1 / z*
  std::string note;
};

struct ClassifyOptions {
  double root_tolerance = 1e-12;   // bisection width on z
  double unit_tolerance = 1e-9;    // F(R) within this of 1 counts as F(R) = 1
};

// Single-base loop systems only; throws InputError otherwise.
RecurrenceClass recurrence_classify(const LoopSystem& ls, const ClassifyOptions& options = {});

// Enclosures of F and F' at a point 0 <= z (hi = +inf past the radius).
Interval first_return_series(const LoopSystem& ls, double z);
Interval first_return_derivative(const LoopSystem& ls, double z);
double first_return_radius(const LoopSystem& ls);

}  // namespace shiftlab
