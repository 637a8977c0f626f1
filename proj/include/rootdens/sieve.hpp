// sieve.hpp -- segmented prime sieve and empirical prime counts: stream the
// primes up to a bound, test the primitive-root / splitting predicates on
// each, and compare the observed frequency with the predicted density.
#pragma once

#include "rootdens/density.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace rootdens {

inline constexpr std::uint64_t max_sieve_bound = 1'000'000'000;
inline constexpr long default_segment_size = 1L << 18;

struct SieveTable {
    std::uint64_t bound = 0;
    long segment_size = default_segment_size;
    std::vector<std::uint32_t> base_primes; // the primes <= sqrt(bound)

    // Streams the primes <= bound in increasing order (deterministic and
    // independent of the segmentation).
    void for_each(const std::function<void(std::uint64_t)>& f) const;
    std::uint64_t count() const; // pi(bound)
};

// Throws budget_error when bound exceeds max_sieve_bound.
SieveTable primes_up_to(std::uint64_t bound, long segment_size = default_segment_size);

// The residue of a modulo the prime q, or nullopt when q divides the
// numerator or denominator.
std::optional<std::uint64_t> residue_mod(const Rat& a, std::uint64_t q);

// True iff a generates the multiplicative group mod q (q prime, coprime to
// a): a^((q-1)/l) != 1 for every prime l | q-1.  nullopt when q divides a's
// numerator or denominator (not eligible, as distinct from false).
std::optional<bool> is_primitive_root(const Rat& a, std::uint64_t q);

enum class PrimeStatus { not_eligible, fails, qualifies };

// The problem's defining condition at a single prime.  Primes dividing any
// generator are not eligible; q = 2 counts as qualifying when eligible (all
// conditions are vacuous in the trivial group F_2*).
PrimeStatus classify_prime(const ResolvedProblem& rp, std::uint64_t q);

struct EmpiricalReport {
    std::uint64_t bound = 0;
    std::uint64_t eligible = 0;   // primes tested
    std::uint64_t qualifying = 0; // primes satisfying the condition
    double observed = 0;          // qualifying / eligible
    double predicted = 0;         // density module's total
    double deviation = 0;         // observed - predicted
    double heuristic_sigma = 0;   // 1/sqrt(eligible), a scale, not a bound
};

// Streams all primes <= bound, classifies each, and attaches the predicted
// density.  Deterministic for every thread count and segment size; progress
// goes to standard error on long runs.
EmpiricalReport empirical_density(const ProblemSpec& spec, std::uint64_t bound,
                                  int threads = 1,
                                  long segment_size = default_segment_size);

} // namespace rootdens
