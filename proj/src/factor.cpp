#include "rootdens/factor.hpp"

#include "rootdens/errors.hpp"

namespace rootdens {

namespace {

// Factor m > 0 into out with exponents scaled by delta (+1 numerator,
// -1 denominator).  The completion step accepts a leftover cofactor only
// when it can be certified prime without any probabilistic test: after
// trial division up to `bound` the cofactor has no divisor <= bound, so once
// perfect powers are unwrapped, any value <= bound^2 must be prime.
void factor_positive(Int m, long bound, long delta, std::map<Int, long>& out) {
    auto add = [&](const Int& p, long e) { out[p] += e * delta; };

    bool bound_exhausted = false;
    Int sqrt_m;
    mpz_sqrt(sqrt_m.get_mpz_t(), m.get_mpz_t());
    for (unsigned long d = 2; m > 1; d = (d == 2 ? 3 : d + 2)) {
        if (Int(d) > sqrt_m)
            break; // remaining cofactor is prime
        if (static_cast<long>(d) > bound) {
            bound_exhausted = true;
            break;
        }
        if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            long e = 0;
            do {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
                ++e;
            } while (mpz_divisible_ui_p(m.get_mpz_t(), d));
            add(Int(d), e);
            mpz_sqrt(sqrt_m.get_mpz_t(), m.get_mpz_t());
        }
    }
    if (m == 1)
        return;
    if (!bound_exhausted) {
        add(m, 1); // no divisor up to sqrt(m): prime
        return;
    }

    // Unwrap perfect powers; the root inherits "no divisor <= bound".
    long e = 1;
    while (mpz_perfect_power_p(m.get_mpz_t())) {
        unsigned long max_k = mpz_sizeinbase(m.get_mpz_t(), 2);
        bool reduced = false;
        for (unsigned long k = 2; k <= max_k; ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
                m = root;
                e *= static_cast<long>(k);
                reduced = true;
                break;
            }
        }
        if (!reduced)
            break; // defensive; should not happen
    }
    if (m <= Int(bound) * bound) {
        add(m, e); // no divisor <= bound >= sqrt(m): certified prime
        return;
    }
    throw budget_error("cofactor " + m.get_str() +
                       " exceeds the certification range of trial-division bound " +
                       std::to_string(bound) + "; raise the factoring bound");
}

} // namespace

Rat Factorization::value() const {
    Rat v(sign, 1);
    for (const auto& [p, e] : exponents) {
        Int pw = int_pow(p, static_cast<unsigned long>(e < 0 ? -e : e));
        if (e >= 0)
            v *= Rat(pw);
        else
            v /= Rat(pw);
    }
    v.canonicalize();
    return v;
}

bool Factorization::is_square() const {
    if (sign < 0)
        return false;
    for (const auto& [p, e] : exponents)
        if (e % 2 != 0)
            return false;
    return true;
}

Int Factorization::squarefree_kernel() const {
    Int k = sign;
    for (const auto& [p, e] : exponents)
        if (e % 2 != 0)
            k *= p;
    return k;
}

Factorization factor_rational(const Rat& x, long bound) {
    if (x == 0)
        throw invalid_input_error("cannot factor zero");
    if (bound < 2)
        throw invalid_input_error("trial-division bound must be at least 2");
    Factorization f;
    f.sign = sgn(x) < 0 ? -1 : 1;
    Int num = abs(x.get_num());
    Int den = x.get_den();
    if (num > 1)
        factor_positive(num, bound, +1, f.exponents);
    if (den > 1)
        factor_positive(den, bound, -1, f.exponents);
    // canonical mpq has coprime num/den, so no exponent can cancel; guard anyway
    for (auto it = f.exponents.begin(); it != f.exponents.end();)
        it = (it->second == 0) ? f.exponents.erase(it) : std::next(it);
    return f;
}

Factorization factor_integer(const Int& n, long bound) {
    return factor_rational(Rat(n), bound);
}

} // namespace rootdens
