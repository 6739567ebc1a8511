// SPDX-License-Identifier: MIT
//
// Exact rational arithmetic for the posbid library.
//
// Every quantity on a decision path in this library is an exact rational.
// We use boost::multiprecision::cpp_rational as the value type: it keeps the
// canonical form (gcd(p, q) == 1, q > 0, sign on the numerator) after every
// operation and has arbitrary-precision integer parts.  This header adds the
// small amount of domain-specific machinery the library needs on top of it:
// parsing (fraction and exact decimal syntax), canonical formatting, exact
// floors, and the "strict multiple floor" used throughout the bidding math.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace posbid {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Builds num/den, validating den != 0 (DomainError otherwise).
Rational make_rational(BigInt num, BigInt den);

// Parses "p", "p/q", or an exact decimal ("0.25", "-3.5", "1.", ".5").
// Optional leading +/- sign on the numerator (and on q for fractions),
// surrounding whitespace ignored.  Throws ValidationError with the offending
// position for malformed text, DomainError for a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text form: "p/q" with q omitted when q == 1, sign on the
// numerator.  parse_rational(format_rational(x)) == x for all x.
std::string format_rational(const Rational& value);

// Exact decimal expansion with `places` digits after the point, rounding
// half away from zero.  places must be >= 0.
std::string format_decimal(const Rational& value, int places);

// Nearest double; for reporting layers only.
double to_double(const Rational& value);

// Exact floor / ceiling to integers.
BigInt floor_int(const Rational& value);
BigInt ceil_int(const Rational& value);

// Largest multiple of `unit` STRICTLY below `value`:
//     strict_floor_multiple(x, y) = y * (ceil(x / y) - 1).
// Equals the ordinary multiple-floor when x is not itself a multiple of y,
// and steps one multiple down when it is.  Requires unit > 0 (DomainError).
Rational strict_floor_multiple(const Rational& value, const Rational& unit);

// Largest integer strictly below value: strict_floor_multiple(value, 1).
BigInt strict_floor(const Rational& value);

// Converts a BigInt known to fit in `long` (DomainError if it does not).
long to_long_checked(const BigInt& value);

}  // namespace posbid
