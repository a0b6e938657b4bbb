#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vetocore {

using Rational = mpq_class;

/// Canonical "p/q" form: q > 0, gcd(p, q) = 1, and q is printed even when it is 1.
std::string to_string(const Rational& value);

/// Accepts "p/q", "p", or a finite decimal such as "0.75".
Rational parse_rational(std::string_view text);

mpz_class floor(const Rational& value);
mpz_class ceil(const Rational& value);

bool is_integer(const Rational& value);

}  // namespace vetocore
