#include "rootdens/snf.hpp"

#include "rootdens/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace rootdens {

MatZ identity_matrix(long n) {
    MatZ m(n, n);
    for (long i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

MatZ mat_mul(const MatZ& x, const MatZ& y) {
    if (x.cols != y.rows)
        throw std::logic_error("matrix product shape mismatch");
    MatZ r(x.rows, y.cols);
    for (long i = 0; i < x.rows; ++i)
        for (long k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0)
                continue;
            for (long j = 0; j < y.cols; ++j)
                r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

Int determinant(const MatZ& m) {
    if (m.rows != m.cols)
        throw std::logic_error("determinant of non-square matrix");
    long n = m.rows;
    if (n == 0)
        return 1;
    MatZ w = m;
    int sign = 1;
    Int prev = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            long swap_row = -1;
            for (long i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0)
                return 0;
            for (long j = 0; j < n; ++j)
                std::swap(w.at(k, j), w.at(swap_row, j));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

long rational_rank(const MatZ& m) {
    MatZ w = m;
    long rank = 0;
    long row = 0;
    for (long col = 0; col < w.cols && row < w.rows; ++col) {
        long pivot = -1;
        for (long i = row; i < w.rows; ++i)
            if (w.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        for (long j = 0; j < w.cols; ++j)
            std::swap(w.at(row, j), w.at(pivot, j));
        for (long i = row + 1; i < w.rows; ++i) {
            if (w.at(i, col) == 0)
                continue;
            Int a = w.at(row, col), b = w.at(i, col);
            for (long j = col; j < w.cols; ++j)
                w.at(i, j) = w.at(i, j) * a - w.at(row, j) * b;
        }
        ++row;
        ++rank;
    }
    return rank;
}

namespace {

// Working state for the reduction: D plus the two transform accumulators.
struct SmithWork {
    MatZ D, L, R;

    long rows() const { return D.rows; }
    long cols() const { return D.cols; }

    void swap_rows(long i, long j) {
        if (i == j)
            return;
        for (long c = 0; c < D.cols; ++c)
            std::swap(D.at(i, c), D.at(j, c));
        for (long c = 0; c < L.cols; ++c)
            std::swap(L.at(i, c), L.at(j, c));
    }
    void swap_cols(long i, long j) {
        if (i == j)
            return;
        for (long r = 0; r < D.rows; ++r)
            std::swap(D.at(r, i), D.at(r, j));
        for (long r = 0; r < R.rows; ++r)
            std::swap(R.at(r, i), R.at(r, j));
    }
    void add_row_multiple(long dst, long src, const Int& q) { // row_dst += q*row_src
        if (q == 0)
            return;
        for (long c = 0; c < D.cols; ++c)
            D.at(dst, c) += q * D.at(src, c);
        for (long c = 0; c < L.cols; ++c)
            L.at(dst, c) += q * L.at(src, c);
    }
    void add_col_multiple(long dst, long src, const Int& q) { // col_dst += q*col_src
        if (q == 0)
            return;
        for (long r = 0; r < D.rows; ++r)
            D.at(r, dst) += q * D.at(r, src);
        for (long r = 0; r < R.rows; ++r)
            R.at(r, dst) += q * R.at(r, src);
    }
    void negate_row(long i) {
        for (long c = 0; c < D.cols; ++c)
            D.at(i, c) = -D.at(i, c);
        for (long c = 0; c < L.cols; ++c)
            L.at(i, c) = -L.at(i, c);
    }
};

// Quotient rounded to nearest (ties toward even magnitude are irrelevant;
// any |remainder| <= b/2 guarantees progress). Requires b > 0.
Int nearest_quotient(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r > b)
        ++q;
    return q;
}

// Clear row t and column t of everything but the pivot, accumulating gcds
// into the pivot position. Returns false when the trailing submatrix at t is
// entirely zero (no pivot exists).
bool eliminate_at(SmithWork& w, long t) {
    MatZ& D = w.D;
    long n = w.rows(), m = w.cols();
    while (true) {
        // choose the entry of minimal nonzero absolute value as pivot
        long pi = -1, pj = -1;
        Int best;
        for (long i = t; i < n; ++i)
            for (long j = t; j < m; ++j) {
                const Int& v = D.at(i, j);
                if (v != 0 && (pi < 0 || mpz_cmpabs(v.get_mpz_t(), best.get_mpz_t()) < 0)) {
                    pi = i;
                    pj = j;
                    best = v;
                }
            }
        if (pi < 0)
            return false;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        if (D.at(t, t) < 0)
            w.negate_row(t);

        bool leftover = false;
        for (long i = t + 1; i < n; ++i)
            if (D.at(i, t) != 0) {
                w.add_row_multiple(i, t, -nearest_quotient(D.at(i, t), D.at(t, t)));
                leftover = leftover || D.at(i, t) != 0;
            }
        for (long j = t + 1; j < m; ++j)
            if (D.at(t, j) != 0) {
                w.add_col_multiple(j, t, -nearest_quotient(D.at(t, j), D.at(t, t)));
                leftover = leftover || D.at(t, j) != 0;
            }
        if (!leftover)
            return true;
        // remainders smaller than the pivot survive; next pass picks them up
    }
}

} // namespace

SmithForm smith_normal_form(const MatZ& A) {
    SmithWork w{A, identity_matrix(A.rows), identity_matrix(A.cols)};
    long k = std::min(A.rows, A.cols);

    long rank = 0;
    for (long t = 0; t < k; ++t) {
        if (!eliminate_at(w, t))
            break;
        ++rank;
    }

    // Enforce the divisibility chain d_t | d_{t+1}: merge the offending
    // column pair and rerun the reduction from that position (each merge
    // strictly reduces d_t toward the pair's gcd, so this terminates).
    bool stable = false;
    while (!stable) {
        stable = true;
        for (long t = 0; t + 1 < rank; ++t) {
            if (w.D.at(t + 1, t + 1) % w.D.at(t, t) != 0) {
                w.add_col_multiple(t, t + 1, Int(1));
                for (long u = t; u < rank; ++u)
                    eliminate_at(w, u);
                stable = false;
                break;
            }
        }
    }

    SmithForm s;
    s.D = std::move(w.D);
    s.L = std::move(w.L);
    s.R = std::move(w.R);
    for (long t = 0; t < rank; ++t)
        s.divisors.push_back(s.D.at(t, t));
    return s;
}

} // namespace rootdens
