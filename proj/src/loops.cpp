#include "shiftlab/loops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "shiftlab/errors.hpp"
#include "shiftlab/graph.hpp"
#include "shiftlab/presentation.hpp"

namespace shiftlab {

double Loop::weight() const { return static_cast<double>(count) * std::exp(log_weight); }

bool LoopTail::vanishes() const {
  switch (kind) {
    case Kind::zero:
      return true;
    case Kind::geometric:
    case Kind::polynomial:
      return sequence.vanishes();
    case Kind::transfer:
      return transfer.body.size() == 0 || transfer.entry.isZero() || transfer.exit.isZero();
  }
  return true;
}

double LoopTail::term(std::size_t n) const {
  if (n < start) return 0.0;
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::geometric:
    case Kind::polynomial:
      return sequence.term(static_cast<double>(n));
    case Kind::transfer: {
      Eigen::VectorXd v = transfer.exit;
      for (std::size_t j = start; j < n; ++j) v = transfer.body * v;
      return transfer.entry.dot(v);
    }
  }
  return 0.0;
}

std::string to_string(LoopTail::Kind k) {
  switch (k) {
    case LoopTail::Kind::zero:
      return "zero";
    case LoopTail::Kind::geometric:
      return "geometric";
    case LoopTail::Kind::polynomial:
      return "polynomial";
    case LoopTail::Kind::transfer:
      return "transfer";
  }
  return "zero";
}

const LoopTail& LoopSystem::tail(unsigned from, unsigned to) const {
  return tails.at(from * base.size() + to);
}

LoopTail& LoopSystem::tail(unsigned from, unsigned to) { return tails.at(from * base.size() + to); }

std::size_t LoopSystem::max_explicit_length() const {
  std::size_t m = 0;
  for (const auto& l : loops) m = std::max(m, l.length);
  return m;
}

double LoopSystem::weight(std::size_t n, unsigned from, unsigned to) const {
  double w = 0.0;
  for (const auto& l : loops)
    if (l.length == n && l.from == from && l.to == to) w += l.weight();
  return w + tail(from, to).term(n);
}

void validate(const LoopSystem& ls) {
  const auto b = ls.base.size();
  if (b != 1 && b != 2) throw InputError("loop system needs one or two distinguished vertices");
  if (ls.tails.size() != b * b) throw InputError("loop system needs one tail per vertex pair");
  std::set<std::tuple<unsigned, unsigned, Word>> labels;
  for (const auto& l : ls.loops) {
    if (l.length < 1) throw InputError("loop lengths must be at least 1");
    if (l.from >= b || l.to >= b) throw InputError("loop endpoint out of range");
    if (l.count < 1) throw InputError("loop counts must be positive");
    if (!std::isfinite(l.log_weight)) throw InputError("loop weights must be finite");
    if (l.label) {
      if (l.label->size() != l.length) throw InputError("loop label length differs from loop length");
      if (l.count != 1) throw InputError("a labeled loop stands for a single path");
      if (!labels.emplace(l.from, l.to, *l.label).second)
        throw InputError("duplicate loop label");
    }
  }
  for (unsigned i = 0; i < b; ++i) {
    for (unsigned j = 0; j < b; ++j) {
      const auto& t = ls.tail(i, j);
      if (t.vanishes()) continue;
      for (const auto& l : ls.loops)
        if (l.from == i && l.to == j && l.length >= t.start)
          throw InputError("tail overlaps explicitly listed loops");
      if (t.kind == LoopTail::Kind::geometric && t.sequence.ratio < 0.0)
        throw InputError("geometric tail ratio must be nonnegative");
      if (t.sequence.coefficient < 0.0) throw InputError("tail coefficient must be nonnegative");
      if (t.kind == LoopTail::Kind::transfer) {
        const auto& tr = t.transfer;
        if (tr.body.rows() != tr.body.cols() || tr.entry.size() != tr.body.rows() ||
            tr.exit.size() != tr.body.rows())
          throw InputError("transfer tail dimensions disagree");
        if ((tr.body.array() < 0).any() || (tr.entry.array() < 0).any() || (tr.exit.array() < 0).any())
          throw InputError("transfer tail entries must be nonnegative");
      }
    }
  }
}

unsigned loop_period(const LoopSystem& ls) {
  std::size_t d = 0;
  for (const auto& l : ls.loops)
    if (l.from == 0 && l.to == 0) d = std::gcd(d, l.length);
  const auto& t = ls.tail(0, 0);
  if (!t.vanishes()) {
    // The tail charges every length from start on unless it is a transfer
    // tail; look at a window of its terms.
    for (std::size_t n = t.start; n < t.start + 64 && d != 1; ++n)
      if (t.term(n) > 0.0) d = std::gcd(d, n);
  }
  return static_cast<unsigned>(d);
}

Exhaustion make_exhaustion(std::vector<FiniteGraph> levels) {
  if (levels.empty()) throw InputError("exhaustion needs at least one level");
  Exhaustion ex;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!irreducible_and_period(levels[i]).irreducible)
      throw InputError("exhaustion level " + std::to_string(i) + " is not irreducible");
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto& small = levels[i];
    const auto& big = levels[i + 1];
    std::vector<Symbol> map;
    for (Symbol v = 0; v < small.vertex_count(); ++v) {
      auto w = big.alphabet().find(small.alphabet().name(v));
      if (!w)
        throw InputError("exhaustion levels are not nested: vertex '" + small.alphabet().name(v) +
                         "' missing from level " + std::to_string(i + 1));
      map.push_back(*w);
    }
    for (const auto& [u, v] : small.edges())
      if (!big.has_edge(map[u], map[v]))
        throw InputError("exhaustion levels are not nested: edge missing from level " +
                         std::to_string(i + 1));
    if (small.vertex_count() == big.vertex_count() && small.edge_count() == big.edge_count())
      ex.strictly_nested = false;
    ex.inclusions.push_back(std::move(map));
  }
  ex.levels = std::move(levels);
  return ex;
}

unsigned presentation_period(const ShiftPresentation& p) {
  struct Visitor {
    unsigned operator()(const FiniteGraph& g) const { return irreducible_and_period(g).period; }
    unsigned operator()(const LoopSystem& ls) const { return loop_period(ls); }
    unsigned operator()(const Exhaustion& ex) const {
      return irreducible_and_period(ex.levels.back()).period;
    }
  };
  return std::visit(Visitor{}, p);
}

}  // namespace shiftlab
