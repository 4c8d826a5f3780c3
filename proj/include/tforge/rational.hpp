#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tforge {

/// Exact rational; GMP keeps it in lowest terms with positive denominator
/// as long as every value goes through canonicalize() on construction from
/// raw parts (the arithmetic operators already return canonical values).
using Rational = mpq_class;
using BigInt = mpz_class;

/// "num/den", always with an explicit denominator ("3/1", "0/1").
std::string to_string(const Rational& q);

/// Accepts "num/den" or a bare integer; result is canonical.
Rational parse_rational(std::string_view text);

} // namespace tforge
