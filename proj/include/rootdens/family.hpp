// family.hpp -- families of Euler factors F(x) = 1 - (x/(1-x)) Q(x) with
// integer polynomial Q.  The generic local density of each density problem
// at a prime p is F(1/p); the product over all primes is the problem's
// universal constant.
#pragma once

#include "rootdens/rational.hpp"

#include <string>
#include <vector>

namespace rootdens {

struct EulerFamily {
    std::vector<Int> q_coeffs; // Q(x) coefficients, constant term first
    bool omit_two = false;     // exclude the p = 2 factor from the product
    std::string name;          // "C_r", "D_n", or a rendering of Q

    Rat q_at(const Rat& x) const;       // Q(x) exactly
    Rat local_factor(const Int& p) const; // F(1/p) exactly

    // Q = x^r: surjectivity of a rank-r group (constants C_r).
    static EulerFamily surjectivity(long r);
    // Q = 1 - (1-x)^n: n simultaneous primitive roots (constants D_n).
    static EulerFamily simultaneous(long n);
    // Arbitrary Q; the name is chosen automatically (C_r / D_n when the
    // coefficients match, a rendering of Q otherwise).
    static EulerFamily from_q(std::vector<Int> q_coeffs);
};

} // namespace rootdens
