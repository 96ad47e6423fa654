#pragma once

#include <gmpxx.h>

#include <string>

#include "hammology/errors.hpp"

namespace hammology {

// All core arithmetic is exact. Distances, radii, barcode endpoints and LP
// tableaus are mpq_class values; floating point appears only in rendering.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (lowest terms not required). Throws InputError.
Rational parse_rational(const std::string& text);

/// Canonical lowest-terms form: "p" or "p/q".
std::string rational_str(const Rational& value);

inline Rational rational_abs(const Rational& value) {
    return value < 0 ? Rational(-value) : value;
}

} // namespace hammology
