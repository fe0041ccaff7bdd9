#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace superinv {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical "p/q" (or "p" for integers) form, reduced, sign on the numerator.
inline std::string to_string(const Rational& r) { return r.get_str(); }

// Accepts "p" or "p/q" with optional leading '-'; no decimals, no spaces.
Rational parse_rational(std::string_view text);

}  // namespace superinv
