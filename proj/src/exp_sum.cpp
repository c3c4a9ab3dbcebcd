#include "shiftlab/exp_sum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace shiftlab {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("ExpSum count overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("ExpSum count overflow");
  return r;
}

}  // namespace

void ExpSum::add(const Rational& exponent, std::uint64_t count) {
  if (count == 0) return;
  auto& c = terms_[exponent];
  c = checked_add(c, count);
}

ExpSum& ExpSum::operator+=(const ExpSum& other) {
  for (const auto& [e, c] : other.terms_) add(e, c);
  return *this;
}

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
  ExpSum out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add(ea + eb, checked_mul(ca, cb));
  return out;
}

ExpSum ExpSum::shifted(const Rational& shift) const {
  ExpSum out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + shift, c);
  return out;
}

std::uint64_t ExpSum::total_count() const {
  std::uint64_t n = 0;
  for (const auto& [e, c] : terms_) n = checked_add(n, c);
  return n;
}

bool ExpSum::is_integer() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

double ExpSum::value() const {
  // Largest exponents last; summing small terms first limits rounding.
  double v = 0.0;
  for (const auto& [e, c] : terms_) v += static_cast<double>(c) * std::exp(to_double(e));
  return v;
}

std::string ExpSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c);
    if (e != 0) s += "*exp(" + shiftlab::to_string(e) + ")";
  }
  return s;
}

}  // namespace shiftlab
