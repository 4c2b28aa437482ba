#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qes {

/// Exact rational number, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (q > 0 after sign normalization). Whitespace is not
/// accepted inside the literal. Throws std::invalid_argument on malformed input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering; integers print without a denominator.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace qes
