#include "shiftlab/variation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shiftlab/errors.hpp"
#include "shiftlab/potential.hpp"

namespace shiftlab {

double VariationCertificate::omega(std::size_t n) const {
  if (n == 0) throw InputError("omega is indexed from 1");
  if (n <= prefix.size()) return prefix[n - 1];
  return tail.term(static_cast<double>(n));
}

Interval weighted_variation_sum(const VariationCertificate& cert, double p, std::size_t from) {
  from = std::max<std::size_t>(from, 1);
  CompensatedSum s;
  for (std::size_t n = from; n <= cert.prefix.size(); ++n)
    s.add(std::pow(static_cast<double>(n), p) * cert.prefix[n - 1]);
  const std::size_t tail_from = std::max(from, cert.prefix.size() + 1);
  Interval head{s.value() * (1 - 1e-15), s.value() * (1 + 1e-15)};
  return head + tail_series(cert.tail, tail_from, p, 1.0);
}

CertificateCheck check_variation_certificate(const VariationCertificate& cert) {
  CertificateCheck out;
  std::ostringstream why;
  for (std::size_t i = 0; i < cert.prefix.size(); ++i) {
    if (!(cert.prefix[i] >= 0.0) || !std::isfinite(cert.prefix[i])) {
      why << "omega_" << i + 1 << " is negative or not finite";
      out.witness = why.str();
      return out;
    }
    if (i > 0 && cert.prefix[i] > cert.prefix[i - 1]) {
      why << "omega increases at n=" << i + 1;
      out.witness = why.str();
      return out;
    }
  }
  const auto& t = cert.tail;
  if (!t.vanishes()) {
    if (t.coefficient < 0.0) {
      out.witness = "tail coefficient is negative";
      return out;
    }
    if (t.kind == SequenceTail::Kind::geometric && (t.ratio < 0.0 || t.ratio > 1.0)) {
      out.witness = "geometric tail ratio outside [0,1] is not nonincreasing";
      return out;
    }
    if (t.kind == SequenceTail::Kind::polynomial && t.exponent < 0.0) {
      out.witness = "polynomial tail exponent is negative";
      return out;
    }
    const auto first = static_cast<double>(cert.prefix.size() + 1);
    if (!cert.prefix.empty() && t.term(first) > cert.prefix.back()) {
      why << "tail term omega_" << cert.prefix.size() + 1 << " exceeds the last prefix value";
      out.witness = why.str();
      return out;
    }
  }
  if (cert.p < 0.0) {
    out.witness = "p must be nonnegative";
    return out;
  }
  out.sum = weighted_variation_sum(cert, cert.p, 1);
  if (!out.sum.finite()) {
    why << "sum n^p omega_n diverges: ";
    if (t.kind == SequenceTail::Kind::polynomial) {
      why << "tail ~ n^" << cert.p << " * n^-" << t.exponent << " = n^-" << t.exponent - cert.p
          << " is not summable";
    } else {
      why << "geometric ratio " << t.ratio << " >= 1";
    }
    out.witness = why.str();
    return out;
  }
  out.accepted = true;
  return out;
}

VariationCertificate lift_variation(const VariationCertificate& cert, unsigned L, unsigned M) {
  auto check = check_variation_certificate(cert);
  if (!check.accepted) throw InputError("cannot lift a rejected certificate: " + check.witness);
  // omega is nonincreasing, so the smaller shift dominates the max.
  const std::size_t s = std::min(L, M);
  VariationCertificate out = cert;
  out.prefix.clear();
  for (std::size_t n = 1 + s; n <= cert.prefix.size(); ++n) out.prefix.push_back(cert.prefix[n - 1]);
  switch (cert.tail.kind) {
    case SequenceTail::Kind::zero:
      break;
    case SequenceTail::Kind::geometric:
      out.tail.coefficient = cert.tail.coefficient * std::pow(cert.tail.ratio, static_cast<double>(s));
      break;
    case SequenceTail::Kind::polynomial:
      out.tail.offset = cert.tail.offset + static_cast<double>(s);
      break;
  }
  return out;
}

Interval lift_budget(const VariationCertificate& cert, unsigned L, unsigned M) {
  return weighted_variation_sum(cert, cert.p, L + 1) + weighted_variation_sum(cert, cert.p, M + 1);
}

VariationCertificate finite_range_certificate(const FiniteRangePotential& f,
                                              std::vector<Word> words, double p) {
  VariationCertificate cert;
  cert.p = p;
  cert.words = std::move(words);
  cert.regularity = f.future_only() ? RegularityClass::E0plus : RegularityClass::E1;
  const std::size_t reach = std::max<std::size_t>(f.left_range(), f.right_range() - 1);
  // Agreement on x[-m, n] pins the window once m >= left and n >= right-1.
  for (std::size_t n = 1; n < reach; ++n) cert.prefix.push_back(f.oscillation());
  cert.tail = SequenceTail::zero();
  return cert;
}

void validate_certificate_for(const FiniteRangePotential& f, const VariationCertificate& cert) {
  if (cert.regularity == RegularityClass::E0plus && !f.future_only())
    throw InputError("E0+ certificates require a potential depending only on future coordinates");
  for (const auto& w : cert.words)
    if (w.empty() || !f.graph().is_word(w))
      throw InputError("certificate word '" + f.graph().format(w) + "' is not admissible");
}

}  // namespace shiftlab
