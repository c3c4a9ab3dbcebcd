#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shiftlab/exp_sum.hpp"
#include "shiftlab/graph.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/presentation.hpp"

namespace shiftlab {

/// Edge-weighted recoding of (g, f): vertices are the blocks of length
/// f.window() (at least 1) and M_uv = A_uv * exp(f(u) - log_scale), the
/// weight sitting on the source block.
struct TransferMatrix {
  HigherBlock blocks;
  Eigen::MatrixXd matrix;
  double log_scale = 0.0;
};

TransferMatrix transfer_matrix(const FiniteGraph& g, const FiniteRangePotential& f);

struct ZEntry {
  std::size_t n = 0;
  double value = 0.0;
  double error = 0.0;           // bound on |value - Z_n|
  std::optional<ExpSum> exact;  // present for rational potentials
  std::uint64_t points = 0;     // periodic points enumerated
};

/// Z_n(S, f, W) for n = 1..n_max.
struct PartitionFunctionTable {
  Word base;
  std::size_t n_max = 0;
  std::vector<ZEntry> entries;  // entries[n-1]
  bool truncated = false;       // enumeration budget hit; entries cover a prefix
  bool base_admissible = true;

  const ZEntry& at(std::size_t n) const { return entries.at(n - 1); }
  std::size_t size() const noexcept { return entries.size(); }
};

struct EnumerationOptions {
  std::uint64_t point_budget = 100'000'000;
  unsigned threads = 1;
};

PartitionFunctionTable partition_function(const FiniteGraph& g, const FiniteRangePotential& f,
                                          const Word& base, std::size_t n_max,
                                          const EnumerationOptions& options = {});

enum class PressureMethod { spectral, z_extrapolation, exhaustion_sup };
std::string to_string(PressureMethod m);

struct PressureEstimate {
  double value = 0.0;
  PressureMethod method = PressureMethod::spectral;
  double error = 0.0;
  std::size_t iterations = 0;
  std::vector<double> levels;  // exhaustion: one value per level
  bool monotone = true;        // exhaustion: levels nondecreasing
};

/// log of the Perron root of the transfer matrix; error from the
/// Collatz-Wielandt gap.  Throws NotIrreducible when the recoded graph is
/// not irreducible.
PressureEstimate pressure_spectral(const FiniteGraph& g, const FiniteRangePotential& f);

/// Growth rate of Z_n along n = 0 mod period, Aitken-accelerated.
PressureEstimate pressure_from_table(const PartitionFunctionTable& t, unsigned period);

// f is defined on the last (largest) level and restricted to the others.
PressureEstimate pressure_exhaustion(const Exhaustion& ex, const FiniteRangePotential& f);

/// Stationary Markov measure on the blocks of length `order` of a graph.
struct MarkovMeasure {
  unsigned order = 1;
  FiniteGraph graph;          // the underlying shift
  std::vector<Word> states;   // blocks of length order, lexicographic
  Eigen::MatrixXd transition; // over states; support inside the block graph
  Eigen::VectorXd stationary;

  double row_defect() const;          // max |row sum - 1|
  double stationarity_defect() const; // max |(pi P - pi)_i|
  // mu([w]) for an admissible word of length >= order.
  double probability(const Word& w) const;
  std::size_t state_index(const Word& block) const;
};

// Builds the measure from a transition matrix on the order-blocks, solving
// for the stationary vector.  Throws InputError when P is not stochastic or
// charges an inadmissible transition.
MarkovMeasure make_markov_measure(const FiniteGraph& g, unsigned order, Eigen::MatrixXd transition);

MarkovMeasure equilibrium_measure(const FiniteGraph& g, const FiniteRangePotential& f);

double measure_entropy(const MarkovMeasure& mu);
double measure_integral(const MarkovMeasure& mu, const FiniteRangePotential& f);
// h_mu + integral of f.
double measure_pressure(const MarkovMeasure& mu, const FiniteRangePotential& f);

enum class RatioTrend { stable, decaying, growing };
std::string to_string(RatioTrend t);

/// Finite-window look at Z_n exp(-nP).  A witness only: the underlying
/// property quantifies over all n.
struct RecurrenceWitness {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double slope = 0.0;  // least-squares slope of log ratio per step
  std::size_t first = 0;
  std::size_t last = 0;
  RatioTrend trend = RatioTrend::stable;
  std::string disclaimer;
};

RecurrenceWitness positive_recurrence_test(const PartitionFunctionTable& t, double pressure);

struct ZetaSeries {
  std::vector<double> values;
  std::optional<std::vector<Rational>> exact;
};

/// Coefficients of exp(sum_{n<=order} Z_n t^n / n) up to t^order; needs a
/// table with the empty base word.
ZetaSeries zeta_series(const PartitionFunctionTable& t, std::size_t order);

struct DistortionReport {
  double value = 0.0;
  std::size_t windows = 0;
  bool no_pairs = false;
  std::optional<Word> worst_window;
  std::size_t worst_n = 0;
};

/// sup |S_n f(x) - S_n f(y)| over n <= horizon and points agreeing on the
/// summed coordinates x[0, n-1], that window beginning and ending with W.
DistortionReport distortion_constant(const FiniteGraph& g, const FiniteRangePotential& f,
                                     const Word& w, std::size_t horizon);

}  // namespace shiftlab
