#include "rootdens/constants.hpp"

#include "rootdens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace rootdens {

namespace {

// ---- small sieves (internal; the sieve module serves empirical counting,
// these serve series truncation) ----------------------------------------------

std::vector<long> small_primes_upto(long n) {
    std::vector<long> primes;
    if (n < 2)
        return primes;
    std::vector<char> composite(static_cast<std::size_t>(n) + 1, 0);
    for (long p = 2; p <= n; ++p) {
        if (composite[static_cast<std::size_t>(p)])
            continue;
        primes.push_back(p);
        for (long m = p * p; m <= n; m += p)
            composite[static_cast<std::size_t>(m)] = 1;
    }
    return primes;
}

std::vector<int> mobius_upto(long n) {
    std::vector<int> mu(static_cast<std::size_t>(n) + 1, 1);
    std::vector<char> composite(static_cast<std::size_t>(n) + 1, 0);
    for (long p = 2; p <= n; ++p) {
        if (composite[static_cast<std::size_t>(p)])
            continue;
        for (long m = p; m <= n; m += p) {
            if (m > p)
                composite[static_cast<std::size_t>(m)] = 1;
            mu[static_cast<std::size_t>(m)] = -mu[static_cast<std::size_t>(m)];
        }
        if (p <= n / p)
            for (long m = p * p; m <= n; m += p * p)
                mu[static_cast<std::size_t>(m)] = 0;
    }
    mu[0] = 0;
    return mu;
}

Real power_of_ten(long e) { return pow(Real(10), static_cast<int>(e)); }

// ---- series data shared by the product routines -----------------------------

// g(x) = (x/(1-x)) Q(x) as a power series: g_j is the partial sum
// q_0 + ... + q_(j-1), eventually the constant Q(1).
Int g_coefficient(const std::vector<Int>& q, long j) {
    Int s = 0;
    for (std::size_t i = 0; i < q.size() && i < static_cast<std::size_t>(j); ++i)
        s += q[i];
    return s;
}

struct SeriesFrame {
    Rat x0;          // radius with sum_j |g_j| x0^j <= 3/4
    double x0_value; // same, as machine double for sizing
};

// Largest tabulated radius at which the absolute series of g stays below
// 3/4; the log series then has |c_k| <= 1.4 x0^{-k}.
SeriesFrame pick_radius(const std::vector<Int>& q) {
    const std::pair<long, double> candidates[] = {
        {2, 0.5}, {3, 1.0 / 3}, {4, 0.25}, {5, 0.2}, {8, 0.125}};
    long degq = static_cast<long>(q.size()) - 1;
    Int q1 = g_coefficient(q, degq + 1); // Q(1)
    for (const auto& [den, val] : candidates) {
        Rat x0 = make_rational(1, Int(den));
        Rat total = 0;
        Rat xpow = 1;
        for (long j = 1; j <= degq; ++j) {
            xpow *= x0;
            total += abs(Rat(g_coefficient(q, j))) * xpow;
        }
        // constant tail: |Q(1)| (x0^(degq+1) + x0^(degq+2) + ...)
        total += abs(Rat(q1)) * xpow * x0 / (1 - x0);
        if (total <= make_rational(3, 4))
            return SeriesFrame{x0, val};
    }
    throw budget_error("factor family too large for the accelerated product");
}

// c_1..c_K of -log(1 - g) via k c_k = k g_k + sum_{j<k} j c_j g_{k-j}.
std::vector<Rat> log_series(const std::vector<Int>& q, long K) {
    std::vector<Rat> c(static_cast<std::size_t>(K) + 1, Rat(0));
    std::vector<Int> g(static_cast<std::size_t>(K) + 1);
    for (long j = 1; j <= K; ++j)
        g[static_cast<std::size_t>(j)] = g_coefficient(q, j);
    for (long k = 1; k <= K; ++k) {
        Rat s = Rat(k) * Rat(g[static_cast<std::size_t>(k)]);
        for (long j = 1; j < k; ++j)
            s += Rat(j) * c[static_cast<std::size_t>(j)] * Rat(g[static_cast<std::size_t>(k - j)]);
        c[static_cast<std::size_t>(k)] = s / k;
    }
    return c;
}

} // namespace

// ---- precision plumbing ------------------------------------------------------

PrecisionGuard::PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

Real to_real(const Rat& x) {
    return Real(x.get_num().get_str()) / Real(x.get_den().get_str());
}

// ---- Bernoulli numbers -------------------------------------------------------

std::vector<Rat> bernoulli_numbers(long n) {
    if (n < 0)
        throw invalid_input_error("Bernoulli index must be nonnegative");
    static std::vector<Rat> cache{Rat(1)};
    static std::mutex lock;
    std::scoped_lock guard(lock);
    while (static_cast<long>(cache.size()) <= n) {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0  =>  B_m
        long m = static_cast<long>(cache.size());
        Rat s = 0;
        Int binom = 1; // C(m+1, j), starting at j = 0
        for (long j = 0; j < m; ++j) {
            s += Rat(binom) * cache[static_cast<std::size_t>(j)];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        cache.push_back(-s / binom); // binom = C(m+1, m) here
    }
    return {cache.begin(), cache.begin() + n + 1};
}

// ---- zeta and prime zeta -----------------------------------------------------

Real zeta(const Real& s, long digits) {
    if (!(s > 1))
        throw invalid_input_error("zeta is evaluated only for s > 1");
    PrecisionGuard guard(static_cast<unsigned>(digits) + 12);
    const Real tol = power_of_ten(-(digits + 6));

    long N = std::max<long>(16, (digits * 7) / 10 + 10);
    for (int attempt = 0; attempt < 6; ++attempt, N *= 2) {
        const long jmax = std::min<long>(N, 400);
        std::vector<Rat> bern = bernoulli_numbers(2 * jmax);

        Real head = 0;
        for (long n = 1; n <= N; ++n)
            head += pow(Real(n), -s);
        Real ns = pow(Real(N), -s); // N^-s
        Real res = head + Real(N) * ns / (s - 1) - ns / 2;

        Real poch = s;        // s (s+1) ... (s+2j-2)
        Real npow = ns / N;   // N^(-s-2j+1)
        Real fact = 2;        // (2j)!
        Real prev_mag = -1;
        bool converged = false;
        for (long j = 1; j <= jmax; ++j) {
            Real term = to_real(bern[static_cast<std::size_t>(2 * j)]) / fact * poch * npow;
            Real mag = abs(term);
            if (mag <= tol) {
                // remainder is bounded by the first omitted term
                converged = true;
                break;
            }
            if (prev_mag >= 0 && mag >= prev_mag)
                break; // asymptotic divergence reached before the target
            res += term;
            prev_mag = mag;
            poch *= (s + (2 * j - 1)) * (s + 2 * j);
            npow /= Real(N) * N;
            fact *= Real(2 * j + 1) * (2 * j + 2);
        }
        if (converged)
            return res;
    }
    throw budget_error("zeta precision target out of reach");
}

Real prime_zeta(long k, long digits) {
    if (k < 2)
        throw invalid_input_error("the prime zeta series needs exponent >= 2");
    PrecisionGuard guard(static_cast<unsigned>(digits) + 12);
    // tail over n > N is at most 4 * 2^(-(N+1)k)
    long N = static_cast<long>(std::ceil((digits + 5) * 3.3220 / static_cast<double>(k))) + 2;
    std::vector<int> mu = mobius_upto(N);
    Real sum = 0;
    for (long n = 1; n <= N; ++n) {
        if (mu[static_cast<std::size_t>(n)] == 0)
            continue;
        long x = n * k;
        if (static_cast<double>(x) * 0.30103 > static_cast<double>(digits) + 8)
            continue; // log zeta(x) < 4 * 2^-x is already negligible
        Real lz = log(zeta(Real(x), digits + 8));
        sum += Real(mu[static_cast<std::size_t>(n)]) * lz / n;
    }
    return sum;
}

Real prime_zeta_tail(long k, long prime_limit, long digits) {
    if (prime_limit < 2 || prime_limit > 1000000)
        throw invalid_input_error("prime limit out of range");
    PrecisionGuard guard(static_cast<unsigned>(digits) + 12);
    Real sum = prime_zeta(k, digits + 6);
    for (long p : small_primes_upto(prime_limit))
        sum -= 1 / pow(Real(p), static_cast<unsigned>(k));
    return sum;
}

// ---- the universal products --------------------------------------------------

CertifiedReal euler_product(const EulerFamily& family, long digits) {
    if (digits < 1 || digits > 1000)
        throw invalid_input_error("digits must be between 1 and 1000");
    const std::vector<Int>& q = family.q_coeffs;
    if (!q.empty() && q[0] != 0)
        throw invalid_input_error("factor family diverges (nonzero constant term)");

    const long cutoff = 101; // exact factors up to here, series beyond
    Rat exact = 1;
    for (long p : small_primes_upto(cutoff)) {
        if (p == 2 && family.omit_two)
            continue;
        Rat f = family.local_factor(p);
        if (f < 0)
            throw invalid_input_error("factor family has a negative Euler factor");
        exact *= f;
    }
    if (exact == 0)
        return CertifiedReal{Real(0), Real(0)};

    SeriesFrame frame = pick_radius(q);
    const double per_k = std::log10((cutoff + 1) * frame.x0_value);
    const long K = static_cast<long>(std::ceil(static_cast<double>(digits + 8) / per_k)) + 2;
    const long headroom = static_cast<long>(std::ceil(K * std::log10(1 / frame.x0_value)));
    const long wdigits = digits + 20 + headroom;

    std::vector<Rat> c = log_series(q, K);
    if (c[1] != 0)
        throw std::logic_error("log series must start at k = 2");

    PrecisionGuard guard(static_cast<unsigned>(wdigits));
    Real series = 0;
    for (long k = 2; k <= K; ++k) {
        if (c[static_cast<std::size_t>(k)] == 0)
            continue;
        series += to_real(c[static_cast<std::size_t>(k)]) * prime_zeta_tail(k, cutoff, wdigits);
    }
    // |c_k| <= 1.4 x0^-k and the prime tail is below 103 * 102^-k, so the
    // dropped part of the series is a geometric tail in 1/(102 x0).
    Real ratio = to_real(frame.x0) * (cutoff + 1);
    Real tail = Real("1.4") * (cutoff + 2) * pow(1 / ratio, static_cast<unsigned>(K + 1)) /
                (1 - 1 / ratio);

    Real value = to_real(exact) * exp(-series);
    Real err = value * (2 * tail + power_of_ten(-(digits + 12)));
    if (!(err < power_of_ten(-digits)))
        throw budget_error("product precision target not reached");
    return CertifiedReal{value, err};
}

CertifiedReal surjectivity_constant(long r, long digits) {
    if (r < 1)
        throw invalid_input_error("surjectivity constants start at rank 1");
    return euler_product(EulerFamily::surjectivity(r), digits);
}

CertifiedReal simultaneous_constant(long n, long digits) {
    if (n < 1)
        throw invalid_input_error("simultaneous constants start at one generator");
    return euler_product(EulerFamily::simultaneous(n), digits);
}

CertifiedReal direct_product_crosscheck(const EulerFamily& family, long prime_bound,
                                        long digits) {
    if (prime_bound < 100 || prime_bound > 2000000)
        throw invalid_input_error("crosscheck prime bound out of range");
    const std::vector<Int>& q = family.q_coeffs;
    if (!q.empty() && q[0] != 0)
        throw invalid_input_error("factor family diverges (nonzero constant term)");

    PrecisionGuard guard(static_cast<unsigned>(digits) + 15);
    Real prod = 1;
    for (long p : small_primes_upto(prime_bound)) {
        if (p == 2 && family.omit_two)
            continue;
        prod *= to_real(family.local_factor(p));
    }

    // first index with a nonzero series coefficient
    long k0 = 0;
    for (long j = 1; j <= static_cast<long>(q.size()) + 1; ++j)
        if (g_coefficient(q, j) != 0) {
            k0 = j;
            break;
        }
    if (k0 == 0)
        return CertifiedReal{prod, abs(prod) * power_of_ten(-(digits + 8))};
    if (k0 < 2)
        throw std::logic_error("series must start at k = 2");

    SeriesFrame frame = pick_radius(q);
    // sum_{p > bound} |log F(1/p)| <= 1.4 x0^-k0 sum_{n > bound} n^-k0
    Real tail = Real("1.4") * pow(1 / to_real(frame.x0), static_cast<unsigned>(k0)) *
                Real("1.2") * pow(Real(prime_bound), static_cast<int>(1 - k0)) / (k0 - 1);
    Real rel = exp(tail) - 1;
    return CertifiedReal{prod, abs(prod) * (Real("1.05") * rel + power_of_ten(-(digits + 8)))};
}

// ---- reference table ---------------------------------------------------------

const char* const reference_surjectivity[7] = {
    "0.37395581361920228805", "0.69750135849636590328", "0.85654044485354217442",
    "0.93126518416000433438", "0.96666886859677751274", "0.98368263631234205850",
    "0.99195728077551831567"};

const char* const reference_simultaneous[7] = {
    "0.37395581361920228805", "0.14734940000200145807", "0.06082165512030508600",
    "0.02610744631491770808", "0.01156584204714335542", "0.00525175802697739754",
    "0.00243022676303272703"};

namespace {

bool within_one_ulp(const std::string& a, const std::string& b) {
    if (a.size() != b.size() || a.substr(0, 2) != "0." || b.substr(0, 2) != "0.")
        return false;
    Int ia(a.substr(2), 10), ib(b.substr(2), 10); // base 10: the strings may lead with 0
    return abs(ia - ib) <= 1;
}

} // namespace

std::vector<ReferenceCheck> check_reference_table() {
    std::vector<ReferenceCheck> checks;
    for (long r = 1; r <= 7; ++r) {
        ReferenceCheck c;
        c.name = "C_" + std::to_string(r);
        c.expected = reference_surjectivity[r - 1];
        c.computed = format_real(surjectivity_constant(r, 24).value, 20);
        c.ok = within_one_ulp(c.expected, c.computed);
        checks.push_back(c);
    }
    for (long n = 1; n <= 7; ++n) {
        ReferenceCheck c;
        c.name = "D_" + std::to_string(n);
        c.expected = reference_simultaneous[n - 1];
        c.computed = format_real(simultaneous_constant(n, 24).value, 20);
        c.ok = within_one_ulp(c.expected, c.computed);
        checks.push_back(c);
    }
    return checks;
}

std::string format_real(const Real& x, long digits) {
    if (digits < 1 || digits > 1000)
        throw invalid_input_error("digits must be between 1 and 1000");
    return x.str(digits, std::ios_base::fixed);
}

} // namespace rootdens
