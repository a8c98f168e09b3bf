#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace period_strata {

// mpq_class keeps itself canonical (reduced, positive denominator) after
// every arithmetic operation; only raw construction needs canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

// "p" or "p/q", optional leading sign, no whitespace.
std::optional<Rational> parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace period_strata
