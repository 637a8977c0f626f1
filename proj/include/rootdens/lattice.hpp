// lattice.hpp -- finitely generated multiplicative subgroups of Q*,
// realised as integer exponent lattices over their support primes, plus the
// mod-p reductions (images modulo p-th powers) and sign-character solving
// that the density computations are built on.
#pragma once

#include "rootdens/factor.hpp"
#include "rootdens/snf.hpp"
#include "rootdens/squareclass.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rootdens {

struct ExponentLattice {
    std::vector<Rat> generators;
    std::vector<Factorization> factorizations; // parallel to generators
    std::vector<int> signs;                    // parallel to generators
    std::vector<Int> support;                  // sorted primes of all generators
    MatZ matrix;                               // generators x support exponents
    SmithForm snf;                             // Smith form of `matrix`
    long free_rank = 0;                        // rank of `matrix` = rank of the group mod torsion

    long num_generators() const { return static_cast<long>(generators.size()); }
    const std::vector<Int>& elementary_divisors() const { return snf.divisors; }

    // Rank over Q of the sublattice spanned by the given generator indices.
    long subset_rank(const std::vector<long>& subset) const;

    // Factors every generator (throws on zero generators or factoring-budget
    // overruns) and precomputes the Smith data.
    static ExponentLattice from_generators(const std::vector<Rat>& gens,
                                           long factor_bound = default_trial_division_bound);
};

// Image of the group modulo p-th powers, as an F_p row space over the
// support coordinates.  At p = 2 a trailing sign column is appended (the
// image is then the group of square classes); at odd p signs vanish because
// -1 is a p-th power.
struct ModPImage {
    Int p;
    std::vector<Int> support;            // column labels (primes), sign column excluded
    bool sign_column = false;
    long columns = 0;                    // support size + (sign_column ? 1 : 0)
    long rank = 0;
    std::vector<std::vector<Int>> basis; // reduced row-echelon basis of the image
    std::vector<long> pivots;            // pivot column of each basis row
    std::vector<std::vector<Int>> generator_coords; // each generator in `basis` coordinates

    // Coordinates of an arbitrary nonzero rational (given by factorization)
    // with respect to `basis`, or nullopt when it is not in the image.
    std::optional<std::vector<Int>> coords_of(const Factorization& f) const;
};

// Image of the full group, or of the subgroup generated by a subset of the
// generators (indices into the generator list).
ModPImage mod_p_image(const ExponentLattice& L, const Int& p);
ModPImage mod_p_image_subset(const ExponentLattice& L, const Int& p,
                             const std::vector<long>& subset);

// Size of the local datum at p attached to the group: 2^rank_2 at p = 2 (the
// number of square classes), (p-1) * p^rank_p at odd p.
Int field_degree(const ExponentLattice& L, const Int& p);

// All square classes of elements of the group (2^rank_2 of them, identity
// first); throws budget_error when rank_2 exceeds max_rank.
std::vector<SquareClass> square_classes(const ExponentLattice& L, long max_rank = 20);

// Primes that can carry entanglement for this group: 2 together with every
// odd prime dividing the discriminant of some square class of the group.
std::vector<Int> critical_primes(const ExponentLattice& L);

// A solved system of sign conditions h(c_j) = t_j for a character h from
// square classes to {+1,-1}.  solve() returns nullopt when the conditions
// are inconsistent; evaluate() returns the forced value of h(c) when the
// conditions determine it and nullopt otherwise.
class SignSystem {
public:
    static std::optional<SignSystem> solve(const std::vector<SquareClass>& classes,
                                           const std::vector<int>& targets);

    std::optional<int> evaluate(const SquareClass& c) const;

private:
    std::vector<Int> support_;          // sorted primes spanning the constraints
    std::vector<std::uint64_t> rows_;   // RREF rows; bit i = support_[i], top bit = sign
    std::vector<int> row_parity_;       // target parity (0 => +1, 1 => -1) per row

    std::optional<std::uint64_t> encode(const SquareClass& c) const;
};

// #{ phi in Hom(image mod p, Z/p) : phi vanishes on some marked generator },
// by inclusion-exclusion over nonempty subsets of `marked` (indices into the
// generator list; at most 12 of them, else budget_error).
Int k_at_p(const ExponentLattice& L, const std::vector<long>& marked, const Int& p);

} // namespace rootdens
