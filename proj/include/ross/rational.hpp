#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace ross {

using Rational = boost::rational<std::int64_t>;

/// Parses a decimal literal ("3.2808", "-0.5", "12") into an exact rational.
Rational rational_from_decimal(const std::string& text);

/// Rounds half-away-from-zero to the nearest integer.
std::int64_t round_half_away_from_zero(const Rational& r);

std::string to_string(const Rational& r);

} // namespace ross
