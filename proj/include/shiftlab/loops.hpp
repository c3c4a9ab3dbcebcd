#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shiftlab/alphabet.hpp"
#include "shiftlab/rational.hpp"
#include "shiftlab/series.hpp"

namespace shiftlab {

/// `count` first-return paths of the given length between distinguished
/// vertices, each of weight exp(log_weight).
struct Loop {
  std::size_t length = 1;
  unsigned from = 0;
  unsigned to = 0;
  std::optional<Word> label;
  std::uint64_t count = 1;
  double log_weight = 0.0;
  std::optional<Rational> exact_log_weight = Rational(0);

  double weight() const;
};

// w_{start+j} = entry^T body^j exit: the exact tail of a first-return series
// through a fixed finite subgraph.
struct TransferTail {
  Eigen::VectorXd entry;
  Eigen::MatrixXd body;
  Eigen::VectorXd exit;
};

/// Total weight of the first-return paths of length n >= start that are not
/// listed explicitly.
struct LoopTail {
  enum class Kind { zero, geometric, polynomial, transfer };

  Kind kind = Kind::zero;
  std::size_t start = 1;
  SequenceTail sequence;  // geometric / polynomial, indexed by length
  TransferTail transfer;

  static LoopTail zero() { return {}; }
  bool vanishes() const;
  double term(std::size_t n) const;
};

std::string to_string(LoopTail::Kind k);

struct LoopSystem {
  std::vector<std::string> base;   // one or two distinguished vertices
  std::optional<Alphabet> labels;  // alphabet of the loop labels, if any
  std::vector<Loop> loops;
  std::vector<LoopTail> tails;     // tails[from * base.size() + to]
  bool truncated = false;          // longer returns exist but are not described

  std::size_t base_count() const noexcept { return base.size(); }
  const LoopTail& tail(unsigned from, unsigned to) const;
  LoopTail& tail(unsigned from, unsigned to);
  std::size_t max_explicit_length() const;

  // Total first-return weight of length n from `from` to `to`.
  double weight(std::size_t n, unsigned from = 0, unsigned to = 0) const;
};

// Throws InputError on an inconsistent loop system.
void validate(const LoopSystem& ls);

// gcd of the lengths carrying weight (explicit loops and nonvanishing tails).
unsigned loop_period(const LoopSystem& ls);

}  // namespace shiftlab
