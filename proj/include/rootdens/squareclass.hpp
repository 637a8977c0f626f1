// squareclass.hpp -- square classes of nonzero rationals (elements of
// Q*/(Q*)^2), stored by their squarefree representative.
#pragma once

#include "rootdens/factor.hpp"

#include <vector>

namespace rootdens {

struct SquareClass {
    int sgn = 1;             // sign of the representative
    std::vector<Int> primes; // sorted distinct primes of the representative

    // Signed squarefree representative.
    Int rep() const;

    bool is_identity() const { return sgn > 0 && primes.empty(); }
    bool is_even() const; // 2 divides the representative

    // Discriminant of the quadratic field cut out by the class: rep itself
    // when rep = 1 (mod 4), otherwise 4*rep.
    Int discriminant() const;
    bool has_odd_discriminant() const; // rep = 1 (mod 4)

    // The odd primes dividing the representative.
    std::vector<Int> odd_primes() const;

    friend SquareClass operator*(const SquareClass& x, const SquareClass& y);
    friend bool operator==(const SquareClass& x, const SquareClass& y);
};

SquareClass square_class_of(const Factorization& f);
SquareClass square_class_of(const Rat& x, long bound = default_trial_division_bound);

// Of the pair {c, -c}, the member whose discriminant is odd, i.e. whose
// representative is 1 (mod 4).  Rejects even classes, where neither is.
SquareClass odd_discriminant_representative(const SquareClass& c);

// chi_4: +1 on residues 1 (mod 4), -1 on residues 3 (mod 4); odd input.
int chi4(const Int& u);
// chi_8: +1 on residues +-1 (mod 8), -1 on residues +-3 (mod 8); odd input.
int chi8(const Int& u);

} // namespace rootdens
