// model.hpp -- exhaustive finite-level oracle: the density problems evaluated
// by brute force on the finite group that carries all the critical-prime
// data, used to validate the exact closed-form densities.
#pragma once

#include "rootdens/density.hpp"

#include <vector>

namespace rootdens {

inline constexpr long default_model_bound = 10'000'000;

struct ModelDensity {
    Rat density;             // |G intersect S| / |G|
    Int total_states;        // |H|
    Int kernel_states;       // |G|
    Int qualifying_states;   // |G intersect S|
    std::vector<Int> primes; // levels actually enumerated
};

// Brute-force restricted density.  Builds the finite group
//   H = [Hom(V, mu_2) x (Z/8)*] x prod_{odd p} [Hom(Gamma mod p-th powers, mu_p) x (Z/p)*]
// where V is the group of square classes together with the class of -1 and
// the pairs at 2 are constrained by h(-1) = chi_4(u_8); cuts out the subgroup
// G on which every quadratic-reciprocity character of the group vanishes;
// intersects with the primitive-root conditions of the problem; and counts.
// `primes` must contain 2 and every critical prime of the group (an empty
// list means exactly the critical primes).  The result equals
// restricted_density over the same primes.  Throws budget_error when |H|
// would exceed state_bound.
ModelDensity finite_model_density(const ResolvedProblem& rp,
                                  std::vector<Int> primes = {},
                                  long state_bound = default_model_bound);
ModelDensity finite_model_density(const ProblemSpec& spec,
                                  std::vector<Int> primes = {},
                                  long state_bound = default_model_bound);

// Checks, state by state, that the reciprocity character attached to a class
// and the one attached to its negative agree on the entire model component
// at 2 (they differ formally by the character of -1, which the state space
// couples to the cyclotomic coordinate).
bool model_flip_invariance(const ResolvedProblem& rp,
                           long state_bound = default_model_bound);

// #{ phi in Hom(image mod p, Z/p) : phi kills some marked generator } by
// direct enumeration of the p^rank_p functionals; crosschecks k_at_p.
Int k_p_by_enumeration(const ExponentLattice& L, const std::vector<long>& marked,
                       const Int& p, long dual_bound = default_model_bound);

} // namespace rootdens
