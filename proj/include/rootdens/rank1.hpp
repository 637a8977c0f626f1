// rank1.hpp -- the classical one-generator density as a truncated Mobius sum
// over division-field degrees: an independent numeric crosscheck of the
// character-sum engine and the constants machinery.
#pragma once

#include "rootdens/constants.hpp"

namespace rootdens {

struct Rank1Sum {
    Real value;              // sum_{n <= N} mu(n) / [degree of the n-division field]
    double tail_bound = 0;   // standard estimate for the omitted n > N terms
};

// For a positive squarefree integer a > 1: the density of primes with
// primitive root a, as the truncated sum of mu(n) over the degrees
// n*phi(n) -- halved when the discriminant of Q(sqrt(a)) divides n.
// Converges to the entangled density E(a) * C_1.  Throws invalid_input_error
// unless a is squarefree and > 1; n_max is capped at 10^7.
Rank1Sum rank1_inclusion_exclusion(const Int& a, long n_max);

} // namespace rootdens
