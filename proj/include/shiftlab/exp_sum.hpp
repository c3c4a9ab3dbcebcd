#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "shiftlab/rational.hpp"

namespace shiftlab {

/// A finite formal sum  Σ count_i · exp(a_i)  with rational exponents a_i.
///
/// Partition functions of rational potentials are kept in this form so two
/// independent computations can be compared exactly, as multisets of
/// exponents, instead of as floating-point numbers.
class ExpSum {
 public:
  ExpSum() = default;

  static ExpSum one() {
    ExpSum s;
    s.add(Rational(0));
    return s;
  }

  void add(const Rational& exponent, std::uint64_t count = 1);
  ExpSum& operator+=(const ExpSum& other);
  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
  friend ExpSum operator*(const ExpSum& a, const ExpSum& b);

  // Multiplies every term by exp(shift).
  ExpSum shifted(const Rational& shift) const;

  bool empty() const noexcept { return terms_.empty(); }
  std::uint64_t total_count() const;
  const std::map<Rational, std::uint64_t>& terms() const noexcept { return terms_; }

  // True when every exponent is zero; the sum is then an integer.
  bool is_integer() const;

  double value() const;
  std::string to_string() const;

  bool operator==(const ExpSum& other) const { return terms_ == other.terms_; }
  bool operator!=(const ExpSum& other) const { return !(*this == other); }

 private:
  std::map<Rational, std::uint64_t> terms_;
};

}  // namespace shiftlab
