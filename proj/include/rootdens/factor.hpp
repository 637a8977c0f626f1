// factor.hpp -- exact signed prime factorization of nonzero rationals.
//
// Factoring is deterministic: trial division by every candidate up to a
// configurable bound, then a certified completion step.  A leftover cofactor
// survives only if it is (a power of) an integer with no divisor below the
// bound that is itself small enough to be provably prime; anything else is a
// budget_error, never a silent or probabilistic acceptance.
#pragma once

#include "rootdens/rational.hpp"

#include <map>
#include <vector>

namespace rootdens {

inline constexpr long default_trial_division_bound = 1000000;

struct Factorization {
    int sign = 1;                  // +1 or -1
    std::map<Int, long> exponents; // prime -> nonzero exponent (negative = denominator)

    Rat value() const;             // reconstructs the rational exactly
    bool is_square() const;        // positive and all exponents even
    // Product of the primes with odd exponent, carrying the sign: the
    // representative of the square class of the value.
    Int squarefree_kernel() const;
};

// Factor a nonzero rational (denominator primes get negative exponents).
Factorization factor_rational(const Rat& x, long bound = default_trial_division_bound);

// Integer convenience wrapper.
Factorization factor_integer(const Int& n, long bound = default_trial_division_bound);

} // namespace rootdens
