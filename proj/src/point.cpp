#include "shiftlab/point.hpp"

#include <algorithm>
#include <numeric>

#include "shiftlab/errors.hpp"

namespace shiftlab {

namespace {

long floor_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

EventuallyPeriodicPoint EventuallyPeriodicPoint::periodic(const Word& w) {
  if (w.empty()) throw InputError("period word must be nonempty");
  return {w, {}, w, 0};
}

Symbol EventuallyPeriodicPoint::at(long i) const {
  if (left.empty() || right.empty()) throw InputError("period words must be nonempty");
  if (i < core_start) return left[static_cast<std::size_t>(floor_mod(i - core_start, static_cast<long>(left.size())))];
  if (i >= core_end()) return right[static_cast<std::size_t>((i - core_end()) % static_cast<long>(right.size()))];
  return core[static_cast<std::size_t>(i - core_start)];
}

Word EventuallyPeriodicPoint::window(long from, long to) const {
  Word w;
  for (long i = from; i < to; ++i) w.push_back(at(i));
  return w;
}

EventuallyPeriodicPoint EventuallyPeriodicPoint::shifted(long k) const {
  auto y = *this;
  y.core_start -= k;
  return y;
}

bool EventuallyPeriodicPoint::admissible(const FiniteGraph& g) const {
  if (left.empty() || right.empty()) return false;
  const long from = core_start - static_cast<long>(left.size()) - 1;
  const long to = core_end() + static_cast<long>(right.size()) + 1;
  return g.is_word(window(from, to));
}

std::string EventuallyPeriodicPoint::format(const FiniteGraph& g) const {
  return "(" + g.format(left) + ")^inf [" + g.format(core) + "]@" + std::to_string(core_start) + " (" +
         g.format(right) + ")^inf";
}

bool operator==(const EventuallyPeriodicPoint& a, const EventuallyPeriodicPoint& b) {
  const long pl = std::lcm(static_cast<long>(a.left.size()), static_cast<long>(b.left.size()));
  const long pr = std::lcm(static_cast<long>(a.right.size()), static_cast<long>(b.right.size()));
  const long lo = std::min(a.core_start, b.core_start) - pl;
  const long hi = std::max(a.core_end(), b.core_end()) + pr;
  for (long i = lo; i < hi; ++i)
    if (a.at(i) != b.at(i)) return false;
  return true;
}

bool occurs_cyclically(const Word& p, const Word& w) {
  if (p.empty()) return false;
  if (w.empty()) return true;
  Word text;
  while (text.size() < p.size() + w.size()) text.insert(text.end(), p.begin(), p.end());
  return std::search(text.begin(), text.end(), w.begin(), w.end()) != text.end();
}

}  // namespace shiftlab
