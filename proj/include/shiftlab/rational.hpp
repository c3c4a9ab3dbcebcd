#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace shiftlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p", "-p", "p/q".
std::optional<Rational> parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

}  // namespace shiftlab
