// rational.hpp -- exact arbitrary-precision integer/rational aliases plus
// small string/conversion helpers used throughout the library.
#pragma once

#include <gmpxx.h>

#include <string>

namespace rootdens {

using Int = mpz_class;
using Rat = mpq_class;

// Canonicalized rational from a num/den pair (mpq_class construction alone
// does not reduce to lowest terms).
Rat make_rational(const Int& num, const Int& den);

// Canonical "num/den" rendering, denominator always present ("1/1", "-3/5").
std::string rational_string(const Rat& x);

// Accepts "a", "a/b", optional leading sign; throws invalid_input_error on
// anything else (including zero denominators).
Rat parse_rational(const std::string& s);

std::string int_string(const Int& n);

// Conversion for quantities that must fit a machine long (ranks, primes used
// as table indices, ...). Throws budget_error when out of range.
long to_long_checked(const Int& n, const char* what);

// x^k, k >= 0.
Int int_pow(const Int& x, unsigned long k);

// floor-mod residue in [0, m); m > 0.
Int mod_floor(const Int& x, const Int& m);

} // namespace rootdens
