#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace advcalc {

using Rational = mpq_class;

// Accepts "3", "-3/4" and plain decimals such as "0.25" or "-1.5e-3" (exactly).
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& value);

std::vector<Rational> parse_rational_list(std::string_view csv);

// Largest integer <= value.
mpz_class floor(const Rational& value);

// True iff value is the square of a rational; writes the root to *root.
bool exact_sqrt(const Rational& value, Rational* root);

}  // namespace advcalc
