#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace bnsens {

/// Exact rational number, always canonicalized to lowest terms.
using Rational = mpq_class;

/// Parses "a/b" or "a" with a >= 0 and b > 0. Returns nullopt on any syntax
/// problem, including a zero denominator and a leading sign.
std::optional<Rational> parse_rational(std::string_view text);

/// "a/b" in lowest terms, or "a" when the denominator is one.
std::string to_string(const Rational& q);

/// Decimal rendering with the given number of fractional digits (human output only).
std::string to_decimal(const Rational& q, int digits = 6);

/// num/den in lowest terms. mpq_class(num, den) does not canonicalize, and
/// GMP's rational arithmetic is undefined on non-canonical operands.
template <class N, class D>
Rational ratio(const N& num, const D& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool in_unit_interval(const Rational& q) { return q >= 0 && q <= 1; }

} // namespace bnsens
