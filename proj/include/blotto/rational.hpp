#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace blotto {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p/q", "p" or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

// Canonical form: "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

Rational from_int(std::int64_t value);

// Exact conversion; throws when the value does not fit.
std::int64_t to_int64(const Integer& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

}  // namespace blotto
