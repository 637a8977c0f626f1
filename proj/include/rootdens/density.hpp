// density.hpp -- the three density problems and their exact invariants: the
// naive local densities (an exact rational multiple of a universal constant),
// the entanglement correction E, vanishing verdicts with witnesses, and the
// assembled density reports.
#pragma once

#include "rootdens/charsum.hpp"
#include "rootdens/constants.hpp"
#include "rootdens/family.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rootdens {

enum class ProblemKind {
    rank_r,  // the group surjects onto the full multiplicative group mod q
    multi,   // every generator is a primitive root mod q
    schinzel // generators are primitive roots and the split primes are squares
};

std::string problem_kind_name(ProblemKind kind);
ProblemKind parse_problem_kind(const std::string& name);

struct ProblemSpec {
    ProblemKind kind = ProblemKind::rank_r;
    std::vector<Rat> generators;   // the group generators (the marked set)
    std::vector<Int> split_primes; // mixed problem only: distinct odd primes
    long factor_bound = default_trial_division_bound;
};

// Throws invalid_input_error on structural problems: zero generators, +-1 as
// a primitive-root target, malformed split primes, out-of-range budgets.
void validate(const ProblemSpec& spec);

// The lattice the computation runs on.  For the mixed problem the split
// primes and the constant 2 are adjoined as extra generators with square
// (plus-one) sign targets.
struct ResolvedProblem {
    ProblemSpec spec;
    ExponentLattice lattice;
    std::vector<long> marked;   // indices of primitive-root targets
    std::vector<long> plus_one; // indices forced square (split primes, adjoined 2)
};

ResolvedProblem resolve_problem(const ProblemSpec& spec);

struct NaiveDensity {
    Rat rho;            // exact ratio of the naive density to the family product
    EulerFamily family; // the family whose Euler product scales rho
};

// The naive density of the problem is rho * prod_p F(1/p) over the family.
NaiveDensity naive_density(const ResolvedProblem& rp);

enum class Verdict { positive, naive_zero, entanglement_zero };

std::string verdict_name(Verdict v);

struct VanishingReport {
    Verdict verdict = Verdict::positive;
    // naive_zero witness: lexicographically least odd-size generator subset
    // whose product is a square (indices into the generator list).
    std::vector<long> odd_square_subset;
    // entanglement_zero witness: generator subset whose product lies in the
    // square class of -3.
    std::vector<long> minus_three_subset;
    long rank3 = 0;               // rank of the image modulo cubes
    bool cube_generator = false;  // some primitive-root target is a cube
    bool exhaustive_check = false; // the 3^rank3 enumeration was needed
};

// Vanishing analysis for the simultaneous problem (also covers the other
// kinds: surjectivity can only vanish naively, the mixed problem's verdict
// falls out of its sign conditions and correction).
VanishingReport vanishing_verdict(const ResolvedProblem& rp);

// The entanglement correction E of the resolved problem (exact).  Requires a
// non-naively-vanishing problem.
Rat entanglement(const ResolvedProblem& rp);

struct DensityReport {
    ProblemSpec spec;
    VanishingReport vanishing;
    NaiveDensity naive;
    Rat correction = 1;     // E
    CertifiedReal constant; // family Euler product
    CertifiedReal total;    // rho * constant * E
    long digits = 0;
};

// Full pipeline: resolve, classify vanishing, compute rho and E exactly, and
// evaluate the family constant to the requested precision.
DensityReport total_density(const ProblemSpec& spec, long digits);

// Exact density of the problem restricted to the given primes: the product
// of the local densities at those primes times the correction visible within
// them.  This is the quantity the finite model measures.
Rat restricted_density(const ResolvedProblem& rp, const std::vector<Int>& primes);
Rat restricted_density(const ProblemSpec& spec, const std::vector<Int>& primes);

} // namespace rootdens
