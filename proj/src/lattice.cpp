#include "rootdens/lattice.hpp"

#include "rootdens/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rootdens {

namespace {

Int inverse_mod(const Int& a, const Int& p) {
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
        throw std::logic_error("non-invertible pivot in mod-p elimination");
    return inv;
}

// Reduced row echelon form over F_p, in place.  Returns pivot columns.
std::vector<long> rref_mod_p(std::vector<std::vector<Int>>& rows, const Int& p) {
    std::vector<long> pivots;
    if (rows.empty())
        return pivots;
    long cols = static_cast<long>(rows[0].size());
    long r = 0;
    long nrows = static_cast<long>(rows.size());
    for (long c = 0; c < cols && r < nrows; ++c) {
        long pivot = -1;
        for (long i = r; i < nrows; ++i)
            if (rows[i][c] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(rows[r], rows[pivot]);
        Int inv = inverse_mod(rows[r][c], p);
        for (long j = c; j < cols; ++j)
            rows[r][j] = mod_floor(rows[r][j] * inv, p);
        for (long i = 0; i < nrows; ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            Int f = rows[i][c];
            for (long j = c; j < cols; ++j)
                rows[i][j] = mod_floor(rows[i][j] - f * rows[r][j], p);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(pivots.size());
    return pivots;
}

// Express `v` in terms of RREF basis rows; nullopt when not in their span.
std::optional<std::vector<Int>> reduce_against(const std::vector<std::vector<Int>>& basis,
                                               const std::vector<long>& pivots,
                                               std::vector<Int> v, const Int& p) {
    std::vector<Int> coords(basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
        Int c = v[pivots[r]];
        coords[r] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = mod_floor(v[j] - c * basis[r][j], p);
    }
    for (const Int& x : v)
        if (x != 0)
            return std::nullopt;
    return coords;
}

std::vector<Int> image_row(const ExponentLattice& L, long gen, const Int& p, bool sign_col) {
    std::vector<Int> row;
    row.reserve(L.support.size() + (sign_col ? 1 : 0));
    for (long j = 0; j < static_cast<long>(L.support.size()); ++j)
        row.push_back(mod_floor(L.matrix.at(gen, j), p));
    if (sign_col)
        row.push_back(L.signs[gen] < 0 ? 1 : 0);
    return row;
}

ModPImage build_image(const ExponentLattice& L, const Int& p, const std::vector<long>& subset) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        throw invalid_input_error("mod-p image requires a prime modulus");
    ModPImage img;
    img.p = p;
    img.support = L.support;
    img.sign_column = (p == 2);
    img.columns = static_cast<long>(L.support.size()) + (img.sign_column ? 1 : 0);

    std::vector<std::vector<Int>> rows;
    for (long g : subset) {
        if (g < 0 || g >= L.num_generators())
            throw std::logic_error("generator index out of range");
        rows.push_back(image_row(L, g, p, img.sign_column));
    }
    std::vector<std::vector<Int>> work = rows;
    img.pivots = rref_mod_p(work, p);
    img.basis = std::move(work);
    img.rank = static_cast<long>(img.pivots.size());

    for (auto& row : rows) {
        auto coords = reduce_against(img.basis, img.pivots, std::move(row), p);
        if (!coords)
            throw std::logic_error("generator escaped its own span");
        img.generator_coords.push_back(std::move(*coords));
    }
    return img;
}

} // namespace

ExponentLattice ExponentLattice::from_generators(const std::vector<Rat>& gens, long factor_bound) {
    ExponentLattice L;
    L.generators = gens;
    std::set<Int> primes;
    for (const Rat& g : gens) {
        if (g == 0)
            throw invalid_input_error("group generators must be nonzero");
        Factorization f = factor_rational(g, factor_bound);
        for (const auto& [p, e] : f.exponents) {
            (void)e;
            primes.insert(p);
        }
        L.signs.push_back(f.sign);
        L.factorizations.push_back(std::move(f));
    }
    L.support.assign(primes.begin(), primes.end());

    L.matrix = MatZ(static_cast<long>(gens.size()), static_cast<long>(L.support.size()));
    for (long i = 0; i < L.matrix.rows; ++i)
        for (long j = 0; j < L.matrix.cols; ++j) {
            auto it = L.factorizations[i].exponents.find(L.support[j]);
            if (it != L.factorizations[i].exponents.end())
                L.matrix.at(i, j) = it->second;
        }
    L.snf = smith_normal_form(L.matrix);
    L.free_rank = L.snf.rank();
    return L;
}

long ExponentLattice::subset_rank(const std::vector<long>& subset) const {
    MatZ sub(static_cast<long>(subset.size()), matrix.cols);
    for (long i = 0; i < sub.rows; ++i) {
        long g = subset[i];
        if (g < 0 || g >= num_generators())
            throw std::logic_error("generator index out of range");
        for (long j = 0; j < matrix.cols; ++j)
            sub.at(i, j) = matrix.at(g, j);
    }
    return rational_rank(sub);
}

std::optional<std::vector<Int>> ModPImage::coords_of(const Factorization& f) const {
    std::vector<Int> v(columns);
    for (const auto& [q, e] : f.exponents) {
        Int r = mod_floor(Int(e), p);
        if (r == 0)
            continue;
        auto it = std::lower_bound(support.begin(), support.end(), q);
        if (it == support.end() || *it != q)
            return std::nullopt; // carries a prime the group does not
        v[it - support.begin()] = r;
    }
    if (sign_column)
        v[columns - 1] = f.sign < 0 ? 1 : 0;
    else if (f.sign < 0 && p == 2)
        throw std::logic_error("sign column missing");
    return reduce_against(basis, pivots, std::move(v), p);
}

ModPImage mod_p_image(const ExponentLattice& L, const Int& p) {
    std::vector<long> all(L.num_generators());
    for (long i = 0; i < L.num_generators(); ++i)
        all[i] = i;
    return build_image(L, p, all);
}

ModPImage mod_p_image_subset(const ExponentLattice& L, const Int& p,
                             const std::vector<long>& subset) {
    return build_image(L, p, subset);
}

Int field_degree(const ExponentLattice& L, const Int& p) {
    ModPImage img = mod_p_image(L, p);
    Int size = int_pow(p, static_cast<unsigned long>(img.rank));
    return p == 2 ? size : Int((p - 1) * size);
}

std::vector<SquareClass> square_classes(const ExponentLattice& L, long max_rank) {
    ModPImage img = mod_p_image(L, 2);
    if (img.rank > max_rank)
        throw budget_error("square-class group too large to enumerate (rank "
                           + std::to_string(img.rank) + " exceeds "
                           + std::to_string(max_rank) + ")");
    std::vector<SquareClass> basis;
    for (const auto& row : img.basis) {
        SquareClass c;
        for (std::size_t j = 0; j < L.support.size(); ++j)
            if (row[j] != 0)
                c.primes.push_back(L.support[j]);
        if (img.sign_column && row[L.support.size()] != 0)
            c.sgn = -1;
        basis.push_back(std::move(c));
    }
    std::vector<SquareClass> out;
    out.reserve(std::size_t(1) << img.rank);
    out.push_back(SquareClass{});
    for (const SquareClass& b : basis) {
        std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(out[i] * b);
    }
    return out;
}

std::vector<Int> critical_primes(const ExponentLattice& L) {
    ModPImage img = mod_p_image(L, 2);
    std::set<Int> crit;
    crit.insert(2);
    for (const auto& row : img.basis)
        for (std::size_t j = 0; j < L.support.size(); ++j)
            if (row[j] != 0 && L.support[j] != 2)
                crit.insert(L.support[j]);
    return std::vector<Int>(crit.begin(), crit.end());
}

std::optional<std::uint64_t> SignSystem::encode(const SquareClass& c) const {
    std::uint64_t v = 0;
    for (const Int& q : c.primes) {
        auto it = std::lower_bound(support_.begin(), support_.end(), q);
        if (it == support_.end() || *it != q)
            return std::nullopt;
        v |= std::uint64_t(1) << (it - support_.begin());
    }
    if (c.sgn < 0)
        v |= std::uint64_t(1) << support_.size();
    return v;
}

std::optional<SignSystem> SignSystem::solve(const std::vector<SquareClass>& classes,
                                            const std::vector<int>& targets) {
    if (classes.size() != targets.size())
        throw std::logic_error("sign system shape mismatch");
    SignSystem s;
    std::set<Int> primes;
    for (const SquareClass& c : classes)
        primes.insert(c.primes.begin(), c.primes.end());
    if (primes.size() + 1 > 63)
        throw budget_error("sign system spans too many primes");
    s.support_.assign(primes.begin(), primes.end());

    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::uint64_t row = *s.encode(classes[i]);
        int parity = targets[i] < 0 ? 1 : 0;
        // reduce against existing rows (kept in echelon order, lowest bit first)
        for (std::size_t r = 0; r < s.rows_.size(); ++r) {
            std::uint64_t lead = s.rows_[r] & ~(s.rows_[r] - 1);
            if (row & lead) {
                row ^= s.rows_[r];
                parity ^= s.row_parity_[r];
            }
        }
        if (row == 0) {
            if (parity != 0)
                return std::nullopt; // contradicts an earlier condition
            continue;
        }
        // back-substitute into existing rows to keep the form reduced
        std::uint64_t lead = row & ~(row - 1);
        for (std::size_t r = 0; r < s.rows_.size(); ++r)
            if (s.rows_[r] & lead) {
                s.rows_[r] ^= row;
                s.row_parity_[r] ^= parity;
            }
        s.rows_.push_back(row);
        s.row_parity_.push_back(parity);
    }
    return s;
}

std::optional<int> SignSystem::evaluate(const SquareClass& c) const {
    auto enc = encode(c);
    if (!enc)
        return std::nullopt;
    std::uint64_t row = *enc;
    int parity = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        std::uint64_t lead = rows_[r] & ~(rows_[r] - 1);
        if (row & lead) {
            row ^= rows_[r];
            parity ^= row_parity_[r];
        }
    }
    if (row != 0)
        return std::nullopt; // value not forced by the conditions
    return parity ? -1 : 1;
}

Int k_at_p(const ExponentLattice& L, const std::vector<long>& marked, const Int& p) {
    if (marked.size() > 12)
        throw budget_error("inclusion-exclusion over more than 12 marked generators");
    if (marked.empty())
        return 0;
    ModPImage full = mod_p_image(L, p);
    // Subset ranks can be read off the generator coordinates inside the full
    // image; they span the same subspaces as the original rows.
    std::vector<std::vector<Int>> coords;
    for (long g : marked)
        coords.push_back(full.generator_coords[g]);

    Int k = 0;
    unsigned long n = marked.size();
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        std::vector<std::vector<Int>> rows;
        for (unsigned long i = 0; i < n; ++i)
            if (mask & (1ul << i))
                rows.push_back(coords[i]);
        long r = static_cast<long>(rref_mod_p(rows, p).size());
        Int term = int_pow(p, static_cast<unsigned long>(full.rank - r));
        if (__builtin_popcountl(mask) % 2 == 1)
            k += term;
        else
            k -= term;
    }
    return k;
}

} // namespace rootdens
