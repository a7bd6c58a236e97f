#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nodal {

// Every numeric result in this library is exact.  Integer and Rational are
// arbitrary-precision GMP values; Rational is always kept in lowest terms
// with a positive denominator (mpq_class canonical form).
using Integer = mpz_class;
using Rational = mpq_class;

// Serializes a rational as "p/q", or just "p" when the denominator is 1.
// This is the wire format used in every JSON interface; floating point is
// never emitted.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

// Parses the "p" / "p/q" format produced by to_string.  Throws ParseError on
// malformed input (including q = 0).
Rational rational_from_string(std::string_view text);

bool is_integer(const Rational& value);

// Numerator of an integral rational.  Throws InternalInconsistencyError if
// the value is not an integer; callers use this exactly where integrality is
// a theorem, so a failure is a diagnostic, not a usage error.
Integer to_integer(const Rational& value);

} // namespace nodal
