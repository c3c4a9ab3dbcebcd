#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/graph.hpp"
#include "shiftlab/point.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/thermo.hpp"

namespace shiftlab {

/// (phi x)_n = map[x_n].  Every source edge must map to a target edge.
struct OneBlockCode {
  FiniteGraph source;
  FiniteGraph target;
  std::vector<Symbol> map;
};

OneBlockCode make_code(FiniteGraph source, FiniteGraph target, std::vector<Symbol> map);
OneBlockCode identity_code(const FiniteGraph& g);
// The labeling of an N-block graph back to the graph it was built from.
OneBlockCode block_code(const HigherBlock& hb, const FiniteGraph& base);

Word apply_code(const OneBlockCode& c, const Word& x);
PeriodicPoint apply_code(const OneBlockCode& c, const PeriodicPoint& x);
EventuallyPeriodicPoint apply_code(const OneBlockCode& c, const EventuallyPeriodicPoint& x);

enum class MagicStatus { certified, refuted, budget_exceeded };
std::string to_string(MagicStatus s);

struct MagicRefutation {
  // "uniqueness": two source paths present W C W but differ on the window at I.
  // "existence": a target periodic point through W without a preimage.
  std::string condition;
  Word presented;  // W C W, or the period word without a preimage
  long span_start = 0;  // index of the first symbol of the source paths
  Word x, x_prime;  // full source paths
  Word window_x, window_x_prime;
  std::optional<Word> periodic_x, periodic_x_prime;  // closed paths, when x, x' close up
};

struct MagicWordCertificate {
  Word word;
  long I = 0;
  std::size_t depth = 0;          // requested
  std::size_t depth_reached = 0;  // all |C| <= depth_reached fully checked
  MagicStatus status = MagicStatus::certified;
  std::optional<MagicRefutation> refutation;
  std::uint64_t words_checked = 0;
  std::uint64_t paths_checked = 0;
  std::size_t periodic_cap = 0;   // condition (1) checked up to this period
  bool injective_on_periodic = true;
};

struct MagicOptions {
  std::uint64_t path_budget = 50'000'000;
};

/// Exhaustive check of the window condition for |C| <= depth, and of
/// preimage existence and uniqueness for target periodic points through W
/// of period <= depth + 2|W|.
MagicWordCertificate verify_magic(const OneBlockCode& c, const Word& w, long I, std::size_t depth,
                                  const MagicOptions& options = {});

/// Sliding-block inverse r_i = inverse[t[i-memory, i+anticipation]] of a
/// one-block code that is a conjugacy.
struct InverseWindow {
  unsigned memory = 0;
  unsigned anticipation = 0;
  std::map<Word, Symbol> table;
};

// Smallest window (memory + anticipation, then memory) resolving the code,
// provided the code also matches periodic point counts up to `periods`.
std::optional<InverseWindow> conjugacy_window(const OneBlockCode& c, unsigned max_window = 6,
                                              std::size_t periods = 10);

/// R -> S and R -> T, each injective with a magic word.  gamma sends S_W
/// (W the magic word of the S leg) into T.
struct AlmostIsomorphism {
  OneBlockCode to_s;
  OneBlockCode to_t;
  MagicWordCertificate magic_s;
  MagicWordCertificate magic_t;
  std::optional<InverseWindow> inverse_s;
  std::optional<InverseWindow> inverse_t;

  const FiniteGraph& common() const { return to_s.source; }
  const FiniteGraph& s() const { return to_s.target; }
  const FiniteGraph& t() const { return to_t.target; }
  bool conjugacy() const { return inverse_s && inverse_t; }
};

// Throws InputError when the legs do not share a source or a certificate is
// not certified to its requested depth.
AlmostIsomorphism assemble_ai(OneBlockCode to_s, OneBlockCode to_t, MagicWordCertificate magic_s,
                              MagicWordCertificate magic_t);

// The unique preimage under the S leg, decoded window by window from
// occurrences of the magic word.  Throws InputError outside S_W.
EventuallyPeriodicPoint lift_to_common(const AlmostIsomorphism& ai, const EventuallyPeriodicPoint& x);
EventuallyPeriodicPoint gamma_on_point(const AlmostIsomorphism& ai, const EventuallyPeriodicPoint& x);

// g = f o gamma^{-1} as a finite-range potential on T; needs both legs to be
// conjugacies.
FiniteRangePotential pushforward_potential(const AlmostIsomorphism& ai, const FiniteRangePotential& f);

struct TransportOptions {
  std::optional<std::uint64_t> seed;  // required when sampling
  std::uint64_t samples = 100'000;
  bool force_sampling = false;
  std::size_t batches = 10;
};

struct TransportResult {
  MarkovMeasure measure;  // order k on T
  bool closed_form = false;
  double entropy_source = 0.0;
  double entropy_target = 0.0;
  double entropy_gap = 0.0;
  double entropy_halfwidth = 0.0;  // 95% batch-means half width; 0 in closed form
  double block_tv = 0.0;           // closed form: Markov fit against the exact k-block marginals
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 0;
  std::uint64_t decoded = 0;
};

/// Image of mu under gamma as an order-k Markov measure on T.  Closed form
/// when both legs are conjugacies, otherwise seeded orbit sampling.
/// Throws InputError when mu is not fully supported.
TransportResult transport_measure(const AlmostIsomorphism& ai, const MarkovMeasure& mu, unsigned k,
                                  const TransportOptions& options = {});

struct CorrespondenceOptions {
  unsigned order = 2;  // k-block comparison of measures
  TransportOptions transport;
};

struct CorrespondenceReport {
  bool potentials_match = true;
  std::size_t points_checked = 0;
  std::optional<EventuallyPeriodicPoint> witness;  // x with g(gamma x) != f(x)
  long witness_index = 0;
  double max_defect = 0.0;
  PressureEstimate pressure_s;
  PressureEstimate pressure_t;
  double pressure_gap = 0.0;
  bool pressures_match = false;
  double measure_gap = 0.0;  // max over k-blocks
  bool measures_match = false;
  bool closed_form = false;
  bool passed() const { return potentials_match && pressures_match && measures_match; }
};

CorrespondenceReport verify_correspondence(const AlmostIsomorphism& ai, const FiniteRangePotential& f,
                                           const FiniteRangePotential& g, std::size_t n_max,
                                           const CorrespondenceOptions& options = {});

}  // namespace shiftlab
