#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace carpool {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "3", "-5/2", "0.75" into an exact rational.
std::optional<Rat> parse_rational(const std::string& text);

// Renders as "num/den" ("7/1" for integers) so round-trips are lossless.
std::string to_fraction_string(const Rat& value);

// Decimal rendering for human consumption; exact only when the value is.
std::string to_decimal_string(const Rat& value, int digits = 6);

Int lcm(const Int& a, const Int& b);

}  // namespace carpool
