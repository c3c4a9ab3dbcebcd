#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "shiftlab/exp_sum.hpp"
#include "shiftlab/graph.hpp"
#include "shiftlab/loops.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/thermo.hpp"
#include "shiftlab/variation.hpp"

namespace shiftlab {

/// First-return presentation of a finite shift at one or two source words
/// of common length N, built on the N-block graph.  Loop labels are ambient
/// words: the first symbols of the blocks a return path visits.
struct InducedPresentation {
  FiniteGraph ambient;
  HigherBlock blocks;             // N-block graph
  std::vector<Word> source_words; // W1 (and W2 when distinct)
  std::vector<Symbol> base_vertices;
  LoopSystem loops;               // zero potential: all log weights 0
  std::size_t N = 0;
  unsigned L = 0;  // offset of the potential, f o S^L o phi
  unsigned M = 0;
  bool direct = true;  // source words given directly rather than built from w a w b
  std::size_t maxlen = 0;
};

/// Enumerates returns of length <= maxlen explicitly; longer returns are
/// the exact transfer tail through the N-block graph minus the source words.
InducedPresentation induce(const FiniteGraph& g, const Word& w1, const Word& w2, std::size_t maxlen);

struct SourceWords {
  Word w1, w2;        // the given words, common length L
  Word a1, b1, a2, b2;
  Word W1, W2;        // w_i a_i w_i b_i, common length N
  unsigned L = 0;
  unsigned M = 0;     // max over j of N - |b_j| - L - 1
};

// Shortest nonempty a_i, b_i (then lexicographic) with w_i a_i w_i b_i
// admissible and both results of a common length.  Throws InputError when
// the words differ in length or no such completion exists.
SourceWords choose_source_words(const FiniteGraph& g, const Word& w1, const Word& w2,
                                std::size_t max_extra = 16);

// induce on the words of choose_source_words, recording L and M.
InducedPresentation induce_from_words(const FiniteGraph& g, const SourceWords& s, std::size_t maxlen);

struct LiftedPotential {
  LoopSystem loops;  // loop weights = Birkhoff sums of f o S^shift along labels
  unsigned shift = 0;
  std::optional<VariationCertificate> certificate;
};

/// Weights each return by f o S^shift o phi, shift = L for presentations
/// built from w a w b and the left range of f for direct ones.  The window
/// of every summed coordinate must lie in label . W_target; throws
/// InputError otherwise.
LiftedPotential lift_potential(const InducedPresentation& ind, const FiniteRangePotential& f,
                               const std::optional<VariationCertificate>& cert = std::nullopt);

struct CoincidenceRow {
  std::size_t n = 0;
  double left = 0.0;
  double right = 0.0;
  std::optional<ExpSum> left_exact;
  std::optional<ExpSum> right_exact;
  bool lower_bound = false;  // right side omits returns longer than maxlen
  bool holds = false;
};

struct CoincidenceReport {
  std::vector<CoincidenceRow> rows;
  bool holds = true;
  std::optional<std::size_t> first_mismatch;
};

// Z_n(g, f, W1) against the weighted loop compositions of total length n
// from the first base vertex, for n = 1..n_max.
CoincidenceReport verify_zn_coincidence(const FiniteGraph& g, const FiniteRangePotential& f,
                                        const InducedPresentation& ind, std::size_t n_max);
CoincidenceReport verify_zn_coincidence(const FiniteGraph& g, const FiniteRangePotential& f,
                                        const InducedPresentation& ind, const LoopSystem& lifted,
                                        std::size_t n_max);

struct InjectivityReport {
  bool injective = true;
  std::size_t points_checked = 0;
  std::optional<Word> collision;  // ambient word reached by two loop sequences
};

// Distinct loop sequences closing at the first base vertex give distinct
// ambient periodic words, for every total length up to n_max.
InjectivityReport check_injectivity(const InducedPresentation& ind, std::size_t n_max);

}  // namespace shiftlab
