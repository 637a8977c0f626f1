// constants.hpp -- certified high-precision evaluation of the universal
// Euler products attached to factor families: special values of the real
// zeta function, the prime zeta function, and the products themselves, each
// carrying a rigorous error bound.
#pragma once

#include "rootdens/family.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

namespace rootdens {

using Real = boost::multiprecision::mpfr_float; // variable precision

// A computed value together with a rigorous bound on its absolute error.
struct CertifiedReal {
    Real value;
    Real error_bound;
};

// Set the mpfr working precision (decimal digits) for the current scope.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

// Exact rational to Real at the current working precision.
Real to_real(const Rat& x);

// B_0 .. B_n as exact rationals (B_1 = -1/2).
std::vector<Rat> bernoulli_numbers(long n);

// zeta(s) for real s > 1, accurate to ~10^-digits (Euler-Maclaurin with a
// remainder bounded by the first omitted term).
Real zeta(const Real& s, long digits);

// P(k) = sum over primes of p^-k for integer k >= 2, accurate to ~10^-digits.
Real prime_zeta(long k, long digits);

// P(k) restricted to primes > limit.
Real prime_zeta_tail(long k, long prime_limit, long digits);

// prod over primes of F(1/p) for the family (p = 2 omitted when the family
// says so), certified to error_bound < 10^-digits.
CertifiedReal euler_product(const EulerFamily& family, long digits);

// The rank-r surjectivity constant C_r and the n-generator simultaneous
// constant D_n.
CertifiedReal surjectivity_constant(long r, long digits);
CertifiedReal simultaneous_constant(long n, long digits);

// Naive partial product over primes <= prime_bound, with the tail estimated
// rigorously; slow-converging but independent of the accelerated machinery.
CertifiedReal direct_product_crosscheck(const EulerFamily& family, long prime_bound,
                                        long digits);

// Twenty-digit reference values (rounded) for C_1..C_7 and D_1..D_7.
extern const char* const reference_surjectivity[7];
extern const char* const reference_simultaneous[7];

struct ReferenceCheck {
    std::string name;
    std::string expected; // reference rounding
    std::string computed; // same format
    bool ok = false;      // agreement within one unit in the last digit
};

// Recomputes the reference table at 20 digits; all rows must match to within
// one unit in the final digit.
std::vector<ReferenceCheck> check_reference_table();

// Round to `digits` significant decimals ("0.69750135849636590328" style).
std::string format_real(const Real& x, long digits);

} // namespace rootdens
