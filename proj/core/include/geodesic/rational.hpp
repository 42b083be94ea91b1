#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace geodesic {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", an integer, or a plain decimal such as "-2.375" exactly.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace geodesic
