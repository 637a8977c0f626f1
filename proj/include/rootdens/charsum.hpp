// charsum.hpp -- the exact entanglement corrections.  Each correction is a
// finite character sum over square classes.  A class and its negative induce
// the same character, so the engine works with the unordered pair {b, -b},
// keyed by the odd primes dividing b: even classes contribute nothing, odd
// classes contribute their weight times a product of local ratios
// -k_q/(deg_q - k_q) over the odd primes q of the class.  Weights must
// therefore be attached to the odd-discriminant member of each pair; the
// helpers below do exactly that, which makes the engine output invariant
// under replacing any listed class by its negative.
#pragma once

#include "rootdens/lattice.hpp"

#include <map>

namespace rootdens {

// Local data at an odd prime: the number k of homomorphisms from the mod-q
// image to Z/q that kill a relevant generator, and the local degree
// deg = (q-1) q^rank_q.  Always 0 < k <= deg/2.
struct OddLocal {
    Int k;
    Int deg;
};

// E = sum over the distinct class pairs {b, -b} among classes[i] of
//         weight * prod_{odd q | b} ( -k_q / (deg_q - k_q) ),
// where weight is the listed value.  Even classes are skipped; listing both
// members of a pair is allowed but they must carry equal values (each pair is
// counted once).  The identity pair must carry value +1 if present.
// odd_locals must cover every odd prime of every class with nonzero value.
Rat character_sum(const std::vector<SquareClass>& classes,
                  const std::vector<Rat>& values,
                  const std::map<Int, OddLocal>& odd_locals);

// Weights for the surjectivity problem over the m square classes of the
// lattice: the identity pair carries +1, a pair whose odd-discriminant member
// lies in the group carries -1/(m-1), every other class carries 0.
std::vector<Rat> rank_r_weights(const std::vector<SquareClass>& classes);

// Weights under solved sign conditions: the value forced on the
// odd-discriminant member of the pair, or 0 when the pair is even or its
// odd-discriminant member is outside the span of the conditions.
std::vector<Rat> sign_weights(const std::vector<SquareClass>& classes,
                              const SignSystem& sys);

// Local data tables for the engine: k_q = k_at_p over the marked generators,
// resp. k_q = 1 for the surjectivity problem, at every odd critical prime.
std::map<Int, OddLocal> odd_local_data(const ExponentLattice& L,
                                       const std::vector<long>& marked);
std::map<Int, OddLocal> unit_local_data(const ExponentLattice& L);

// E for the surjectivity problem.
Rat entanglement_rank_r(const ExponentLattice& L);

// The same quantity through the folded identity
//     E = (1 - 1/m)^{-1} * (1 - S/m),
//     S = sum over classes with d = 1 (mod 4) of prod_{q | b} -1/(deg_q - 1)
// (the identity class is part of S).  Kept as an independent cross-check.
Rat entanglement_rank_r_factored(const ExponentLattice& L);

// Sign conditions defining the 2-adic weights: h = -1 on every marked
// generator (simultaneous primitive roots), plus h = +1 on every plus-one
// generator for the mixed problem.  nullopt when inconsistent, which is
// exactly the naive-vanishing situation.
std::optional<SignSystem> multi_sign_system(const ExponentLattice& L,
                                            const std::vector<long>& marked);
std::optional<SignSystem> schinzel_sign_system(const ExponentLattice& L,
                                               const std::vector<long>& marked,
                                               const std::vector<long>& plus_one);

// E for simultaneous primitive roots among the marked generators.  The sign
// conditions must be solvable (callers detect the vanishing case first).
Rat entanglement_multi(const ExponentLattice& L, const std::vector<long>& marked);

// E for the mixed problem: marked generators simultaneously primitive roots,
// plus-one generators (the split set and the adjoined 2) squares.
Rat entanglement_schinzel(const ExponentLattice& L, const std::vector<long>& marked,
                          const std::vector<long>& plus_one);

// Closed form for distinct odd primes a as simultaneous primitive roots:
//     E = (1/2) [ prod_a (1 + D_a) + prod_a (1 + chi4(a) D_a) ],
//     D_a = c_a/(1 - c_a),  c_a = k_a/deg_a.
Rat multi_closed_form(const std::vector<Int>& primes,
                      long factor_bound = default_trial_division_bound);

// Closed form for the mixed problem over disjoint sets of distinct odd
// primes (members of a_primes primitive roots, members of b_primes and 2
// squares):
//     E = (1/2) [ prod_A (1 + D_a) prod_B (1 - D_b)
//               + prod_A (1 + chi4(a) D_a) prod_B (1 - chi4(b) D_b) ].
Rat schinzel_closed_form(const std::vector<Int>& a_primes,
                         const std::vector<Int>& b_primes,
                         long factor_bound = default_trial_division_bound);

} // namespace rootdens
