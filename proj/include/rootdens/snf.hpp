// snf.hpp -- dense integer matrices and Smith normal form over
// arbitrary-precision integers with full transform tracking.
#pragma once

#include "rootdens/rational.hpp"

#include <vector>

namespace rootdens {

struct MatZ {
    long rows = 0, cols = 0;
    std::vector<Int> a; // row-major

    MatZ() = default;
    MatZ(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    Int& at(long r, long c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Int& at(long r, long c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    friend bool operator==(const MatZ&, const MatZ&) = default;
};

MatZ identity_matrix(long n);
MatZ mat_mul(const MatZ& x, const MatZ& y);

// Exact determinant (Bareiss fraction-free elimination); square input.
Int determinant(const MatZ& m);

// Rank over the rationals (fraction-free elimination).
long rational_rank(const MatZ& m);

// D = L * A * R with L (rows x rows) and R (cols x cols) unimodular, D
// diagonal, nonnegative, and each diagonal entry dividing the next.
struct SmithForm {
    MatZ D, L, R;
    std::vector<Int> divisors; // the nonzero diagonal entries, in order

    long rank() const { return static_cast<long>(divisors.size()); }
};

SmithForm smith_normal_form(const MatZ& A);

} // namespace rootdens
