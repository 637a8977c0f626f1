#include "rootdens/sieve.hpp"

#include "rootdens/constants.hpp"
#include "rootdens/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

namespace rootdens {

namespace {

long clamp_segment(long segment_size) {
    if (segment_size > (1L << 24))
        throw budget_error("segment size exceeds the memory budget");
    if (segment_size < 64) segment_size = 64;
    return segment_size + (segment_size & 1); // keep segments even
}

std::vector<std::uint32_t> simple_sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    base %= q;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, q);
        base = mulmod(base, base, q);
        exp >>= 1;
    }
    return r;
}

// Sieve the odd numbers of [lo, lo + len) for primality; composite[i]
// corresponds to lo + 2i.  lo must be odd.
std::vector<bool> sieve_segment(std::uint64_t lo, std::uint64_t len,
                                const std::vector<std::uint32_t>& base_primes) {
    std::uint64_t n_odd = (len + 1) / 2;
    std::vector<bool> composite(n_odd, false);
    std::uint64_t hi = lo + len;
    for (std::uint32_t p : base_primes) {
        if (p == 2) continue;
        std::uint64_t pp = p;
        if (pp * pp >= hi) break;
        std::uint64_t start = std::max(pp * pp, ((lo + pp - 1) / pp) * pp);
        if (start % 2 == 0) start += pp;
        for (std::uint64_t m = start; m < hi; m += 2 * pp) {
            if (m >= lo) composite[(m - lo) / 2] = true;
        }
    }
    if (lo == 1 && n_odd > 0) composite[0] = true; // 1 is not prime
    return composite;
}

// Distinct prime factors of q-1 for every odd q in [lo, lo + len), by
// striking the even numbers of [lo-1, lo-1+len) with the base primes.
struct FactoredEvens {
    std::uint64_t base = 0; // the even number at index 0 is `base`
    std::vector<std::array<std::uint32_t, 9>> factors;
    std::vector<std::uint8_t> counts;
    std::vector<std::uint64_t> leftovers; // 1 or a prime > sqrt of the range

    std::uint64_t index_of(std::uint64_t even) const { return (even - base) / 2; }
};

FactoredEvens factor_evens(std::uint64_t lo, std::uint64_t len,
                           const std::vector<std::uint32_t>& base_primes) {
    FactoredEvens fe;
    fe.base = lo - 1; // even, since lo is odd
    std::uint64_t n = (len + 1) / 2;
    fe.factors.resize(n);
    fe.counts.assign(n, 0);
    fe.leftovers.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t m = fe.base + 2 * i;
        while (m > 0 && m % 2 == 0) m /= 2;
        fe.leftovers[i] = m;
    }
    std::uint64_t hi = fe.base + 2 * n;
    for (std::uint32_t p : base_primes) {
        if (p == 2) continue;
        std::uint64_t pp = p;
        if (pp * pp >= hi) break;
        std::uint64_t start = ((fe.base + pp - 1) / pp) * pp;
        if (start % 2 == 1) start += pp;
        if (start < fe.base) start += 2 * pp;
        for (std::uint64_t m = start; m < hi; m += 2 * pp) {
            std::uint64_t i = (m - fe.base) / 2;
            if (fe.leftovers[i] % pp == 0) {
                fe.factors[i][fe.counts[i]++] = p;
                do fe.leftovers[i] /= pp;
                while (fe.leftovers[i] % pp == 0);
            }
        }
    }
    return fe;
}

std::vector<std::uint64_t> distinct_factors_by_trial(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
        if (m % d == 0) {
            out.push_back(d);
            do m /= d;
            while (m % d == 0);
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

// Everything empirical_density needs per prime, precomputed once.
struct PredicateData {
    ProblemKind kind = ProblemKind::rank_r;
    std::vector<std::pair<Int, Int>> generators; // numerator, denominator
    std::vector<long> marked;
    std::vector<long> plus_one;
    std::vector<std::uint64_t> support; // sorted, only the values fitting 64 bits

    static PredicateData from(const ResolvedProblem& rp) {
        PredicateData pd;
        pd.kind = rp.spec.kind;
        for (const Rat& g : rp.lattice.generators)
            pd.generators.emplace_back(g.get_num(), g.get_den());
        pd.marked = rp.marked;
        pd.plus_one = rp.plus_one;
        for (const Int& p : rp.lattice.support)
            if (p.fits_ulong_p()) pd.support.push_back(p.get_ui());
        return pd;
    }
};

std::uint64_t residue_of(const std::pair<Int, Int>& g, std::uint64_t q) {
    std::uint64_t num = mpz_fdiv_ui(g.first.get_mpz_t(), q);
    std::uint64_t den = mpz_fdiv_ui(g.second.get_mpz_t(), q);
    return mulmod(num, powmod(den, q - 2, q), q);
}

bool generates_everything(const std::vector<std::uint64_t>& residues, std::uint64_t q,
                          const std::vector<std::uint64_t>& ells) {
    for (std::uint64_t ell : ells) {
        bool some_nonpower = false;
        for (std::uint64_t r : residues)
            if (powmod(r, (q - 1) / ell, q) != 1) {
                some_nonpower = true;
                break;
            }
        if (!some_nonpower) return false;
    }
    return true;
}

bool all_primitive(const std::vector<std::uint64_t>& residues, std::uint64_t q,
                   const std::vector<std::uint64_t>& ells) {
    for (std::uint64_t r : residues)
        for (std::uint64_t ell : ells)
            if (powmod(r, (q - 1) / ell, q) == 1) return false;
    return true;
}

bool predicate_holds(const PredicateData& pd, std::uint64_t q,
                     const std::vector<std::uint64_t>& ells) {
    if (q == 2) return true; // every condition is vacuous in the trivial group
    switch (pd.kind) {
    case ProblemKind::rank_r: {
        std::vector<std::uint64_t> residues;
        for (const auto& g : pd.generators) residues.push_back(residue_of(g, q));
        return generates_everything(residues, q, ells);
    }
    case ProblemKind::multi:
    case ProblemKind::schinzel: {
        std::vector<std::uint64_t> residues;
        for (long i : pd.marked) residues.push_back(residue_of(pd.generators[i], q));
        if (!all_primitive(residues, q, ells)) return false;
        for (long i : pd.plus_one) {
            std::uint64_t r = residue_of(pd.generators[i], q);
            if (powmod(r, (q - 1) / 2, q) != 1) return false;
        }
        return true;
    }
    }
    throw std::logic_error("unknown problem kind");
}

} // namespace

SieveTable primes_up_to(std::uint64_t bound, long segment_size) {
    if (bound > max_sieve_bound)
        throw budget_error("sieve bound exceeds the configured ceiling");
    SieveTable t;
    t.bound = bound;
    t.segment_size = clamp_segment(segment_size);
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound))) + 2;
    while (root * root > bound + 1) --root;
    t.base_primes = simple_sieve(std::max<std::uint64_t>(root, 2));
    return t;
}

void SieveTable::for_each(const std::function<void(std::uint64_t)>& f) const {
    if (bound >= 2) f(2);
    std::uint64_t lo = 3;
    while (lo <= bound) {
        std::uint64_t len = std::min<std::uint64_t>(segment_size, bound - lo + 1);
        std::vector<bool> composite = sieve_segment(lo, len, base_primes);
        for (std::uint64_t i = 0; i < composite.size(); ++i)
            if (!composite[i]) f(lo + 2 * i);
        lo += len + (len & 1);
    }
}

std::uint64_t SieveTable::count() const {
    std::uint64_t n = 0;
    for_each([&](std::uint64_t) { ++n; });
    return n;
}

std::optional<std::uint64_t> residue_mod(const Rat& a, std::uint64_t q) {
    if (q < 2) throw invalid_input_error("the modulus must be a prime");
    std::uint64_t num = mpz_fdiv_ui(a.get_num().get_mpz_t(), q);
    std::uint64_t den = mpz_fdiv_ui(a.get_den().get_mpz_t(), q);
    if (num == 0 || den == 0) return std::nullopt;
    return mulmod(num, powmod(den, q - 2, q), q);
}

std::optional<bool> is_primitive_root(const Rat& a, std::uint64_t q) {
    auto r = residue_mod(a, q);
    if (!r) return std::nullopt;
    if (q == 2) return true;
    for (std::uint64_t ell : distinct_factors_by_trial(q - 1))
        if (powmod(*r, (q - 1) / ell, q) == 1) return false;
    return true;
}

PrimeStatus classify_prime(const ResolvedProblem& rp, std::uint64_t q) {
    for (const Int& p : rp.lattice.support)
        if (p.fits_ulong_p() && p.get_ui() == q) return PrimeStatus::not_eligible;
    PredicateData pd = PredicateData::from(rp);
    std::vector<std::uint64_t> ells =
        q == 2 ? std::vector<std::uint64_t>{} : distinct_factors_by_trial(q - 1);
    return predicate_holds(pd, q, ells) ? PrimeStatus::qualifies : PrimeStatus::fails;
}

EmpiricalReport empirical_density(const ProblemSpec& spec, std::uint64_t bound,
                                  int threads, long segment_size) {
    if (bound > max_sieve_bound)
        throw budget_error("sieve bound exceeds the configured ceiling");
    if (threads < 1 || threads > 256)
        throw invalid_input_error("thread count out of range");
    segment_size = clamp_segment(segment_size);

    ResolvedProblem rp = resolve_problem(spec);
    PredicateData pd = PredicateData::from(rp);
    SieveTable table = primes_up_to(bound, segment_size);

    EmpiricalReport rep;
    rep.bound = bound;

    // q = 2 first (segments below cover the odd numbers).
    if (bound >= 2 &&
        !std::binary_search(pd.support.begin(), pd.support.end(), std::uint64_t(2))) {
        rep.eligible = 1;
        rep.qualifying = 1;
    }

    std::uint64_t first = 3;
    std::uint64_t n_segments =
        bound >= first ? (bound - first) / segment_size + 1 : 0;
    std::atomic<std::uint64_t> next_segment{0};
    std::atomic<std::uint64_t> done_segments{0};
    std::mutex tally_mutex;
    std::uint64_t eligible = 0, qualifying = 0;
    bool report_progress = bound >= 10'000'000;

    auto worker = [&]() {
        std::uint64_t local_eligible = 0, local_qualifying = 0;
        while (true) {
            std::uint64_t seg = next_segment.fetch_add(1);
            if (seg >= n_segments) break;
            std::uint64_t lo = first + seg * segment_size;
            std::uint64_t len = std::min<std::uint64_t>(segment_size, bound - lo + 1);
            std::vector<bool> composite = sieve_segment(lo, len, table.base_primes);
            FactoredEvens fe = factor_evens(lo, len, table.base_primes);
            for (std::uint64_t i = 0; i < composite.size(); ++i) {
                if (composite[i]) continue;
                std::uint64_t q = lo + 2 * i;
                if (std::binary_search(pd.support.begin(), pd.support.end(), q)) continue;
                std::uint64_t fi = fe.index_of(q - 1);
                std::vector<std::uint64_t> ells = {2};
                for (std::uint8_t t = 0; t < fe.counts[fi]; ++t)
                    ells.push_back(fe.factors[fi][t]);
                if (fe.leftovers[fi] > 1) ells.push_back(fe.leftovers[fi]);
                ++local_eligible;
                if (predicate_holds(pd, q, ells)) ++local_qualifying;
            }
            std::uint64_t done = done_segments.fetch_add(1) + 1;
            if (report_progress && n_segments >= 20 && done % (n_segments / 20) == 0)
                std::fprintf(stderr, "sieve: %llu of %llu segments\n",
                             static_cast<unsigned long long>(done),
                             static_cast<unsigned long long>(n_segments));
        }
        std::lock_guard<std::mutex> lock(tally_mutex);
        eligible += local_eligible;
        qualifying += local_qualifying;
    };

    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    rep.eligible += eligible;
    rep.qualifying += qualifying;
    rep.observed = rep.eligible
                       ? static_cast<double>(rep.qualifying) / static_cast<double>(rep.eligible)
                       : 0.0;
    {
        PrecisionGuard guard(20);
        DensityReport dr = total_density(spec, 15);
        rep.predicted = dr.total.value.convert_to<double>();
    }
    rep.deviation = rep.observed - rep.predicted;
    rep.heuristic_sigma =
        rep.eligible ? 1.0 / std::sqrt(static_cast<double>(rep.eligible)) : 0.0;
    return rep;
}

} // namespace rootdens
