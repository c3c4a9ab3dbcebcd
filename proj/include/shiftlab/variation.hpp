#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "shiftlab/alphabet.hpp"
#include "shiftlab/series.hpp"

namespace shiftlab {

class FiniteRangePotential;

// E1: summable with weight n; E0+: future-only with summable variations.
enum class RegularityClass { E1, E0plus };

/// A claimed variation bound  omega_1 >= omega_2 >= ...  relative to a word
/// family, given as an explicit prefix followed by a closed-form tail
/// (omega_n = tail.term(n) for n > prefix.size()).
struct VariationCertificate {
  std::vector<double> prefix;
  SequenceTail tail;
  double p = 1.0;
  std::vector<Word> words;
  RegularityClass regularity = RegularityClass::E1;

  double omega(std::size_t n) const;
};

struct CertificateCheck {
  bool accepted = false;
  Interval sum;         // sum_n n^p omega_n
  std::string witness;  // reason for rejection
};

CertificateCheck check_variation_certificate(const VariationCertificate& cert);

// sum_{n >= from} n^p omega_n.
Interval weighted_variation_sum(const VariationCertificate& cert, double p, std::size_t from);

/// omega'_n = max(omega_{n+L}, omega_{n+M}); throws InputError when the
/// input certificate is not accepted.
VariationCertificate lift_variation(const VariationCertificate& cert, unsigned L, unsigned M);

// Right-hand side of the lift estimate:
//   sum_n (n+L)^p omega_{n+L} + (n+M)^p omega_{n+M}.
Interval lift_budget(const VariationCertificate& cert, unsigned L, unsigned M);

// A certificate that is exact for a finite-range potential: omega_n is the
// largest change of f under agreement on [-n, n], zero once n covers the window.
VariationCertificate finite_range_certificate(const FiniteRangePotential& f,
                                              std::vector<Word> words, double p = 1.0);

// Pairs a certificate with a potential: E0+ needs a future-only potential and
// every word of the family must be admissible.
void validate_certificate_for(const FiniteRangePotential& f, const VariationCertificate& cert);

}  // namespace shiftlab
