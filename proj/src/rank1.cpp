#include "rootdens/rank1.hpp"

#include "rootdens/errors.hpp"
#include "rootdens/factor.hpp"

#include <cmath>
#include <vector>

namespace rootdens {

Rank1Sum rank1_inclusion_exclusion(const Int& a, long n_max) {
    if (a <= 1)
        throw invalid_input_error("the generator must be a positive integer greater than 1");
    if (n_max < 1)
        throw invalid_input_error("the truncation bound must be positive");
    if (n_max > 10'000'000)
        throw budget_error("truncation bound exceeds the sieve budget");

    Factorization f = factor_integer(a);
    for (const auto& [p, e] : f.exponents)
        if (e != 1)
            throw invalid_input_error("the generator must be squarefree");

    // The degree of Q(zeta_n, a^(1/n)) halves exactly when sqrt(a) lies in
    // Q(zeta_n) -- the discriminant of Q(sqrt(a)) divides n -- AND n is even
    // (only then does the square root shorten the Kummer part).  For
    // a = 1 (mod 4) the discriminant is odd, so the divisor to test is twice
    // the discriminant; otherwise the discriminant 4a is already even.
    Int halving_modulus = (mod_floor(a, 4) == 1) ? 2 * a : 4 * a;

    // mu and phi up to n_max by a smallest-prime-factor sieve.
    std::vector<std::int32_t> spf(n_max + 1, 0);
    std::vector<std::int32_t> primes;
    std::vector<std::int8_t> mu(n_max + 1, 0);
    std::vector<std::int64_t> phi(n_max + 1, 0);
    mu[1] = 1;
    phi[1] = 1;
    for (long i = 2; i <= n_max; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::int32_t>(i);
            primes.push_back(static_cast<std::int32_t>(i));
            mu[i] = -1;
            phi[i] = i - 1;
        }
        for (std::int32_t p : primes) {
            if (p > spf[i] || static_cast<long>(p) * i > n_max) break;
            long ip = static_cast<long>(p) * i;
            spf[ip] = p;
            if (p == spf[i]) {
                mu[ip] = 0;
                phi[ip] = phi[i] * p;
            } else {
                mu[ip] = static_cast<std::int8_t>(-mu[i]);
                phi[ip] = phi[i] * (p - 1);
            }
        }
    }

    PrecisionGuard guard(30);
    Real sum = 0;
    for (long n = 1; n <= n_max; ++n) {
        if (mu[n] == 0) continue;
        Real degree = Real(n) * Real(phi[n]);
        if (mod_floor(Int(n), halving_modulus) == 0) degree /= 2;
        sum += Real(static_cast<int>(mu[n])) / degree;
    }

    Rank1Sum out;
    out.value = sum;
    // The terms are bounded by 2/(n*phi(n)); the partial sums of n/phi(n)
    // grow like 1.9436*N, giving the leading 1/N term, with a lower-order
    // correction kept for small N.
    double nd = static_cast<double>(n_max);
    out.tail_bound = 2.0 * (1.9436 / nd + 1.55 / std::pow(nd, 1.5));
    return out;
}

} // namespace rootdens
