#include "rootdens/density.hpp"

#include "rootdens/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace rootdens {

namespace {

// 2^n subsets of the primitive-root targets are scanned for the exact local
// densities; beyond this the problem is out of budget, not out of theory.
constexpr long max_subset_generators = 12;

std::vector<long> all_indices(long n) {
    std::vector<long> idx(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    return idx;
}

void require_subset_budget(std::size_t n) {
    if (n > static_cast<std::size_t>(max_subset_generators))
        throw budget_error("too many primitive-root targets for exact subset analysis");
}

// ---- F_2 linear algebra on generator square classes -----------------------
//
// Subsets of generators are solutions x of sum_i x_i v_i = t over F_2, where
// v_i encodes the square class of the i-th generator.  Solutions are kept as
// bitmasks (particular solution plus kernel basis).

struct F2Solutions {
    bool solvable = false;
    std::uint32_t particular = 0;
    std::vector<std::uint32_t> kernel;
};

F2Solutions solve_f2(const std::vector<std::vector<int>>& vecs, const std::vector<int>& target) {
    const std::size_t n = vecs.size();
    const std::size_t m = target.size();
    if (n >= 31)
        throw budget_error("too many generators for subset search");
    std::vector<std::vector<int>> rows(m, std::vector<int>(n + 1));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            rows[j][i] = vecs[i][j];
        rows[j][n] = target[j];
    }
    std::vector<long> pivot_of_col(n, -1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < m; ++c) {
        std::size_t pr = rank;
        while (pr < m && rows[pr][c] == 0)
            ++pr;
        if (pr == m)
            continue;
        std::swap(rows[pr], rows[rank]);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == rank || rows[j][c] == 0)
                continue;
            for (std::size_t k = c; k <= n; ++k)
                rows[j][k] ^= rows[rank][k];
        }
        pivot_of_col[c] = static_cast<long>(rank);
        ++rank;
    }
    F2Solutions out;
    for (std::size_t j = rank; j < m; ++j)
        if (rows[j][n] != 0)
            return out;
    out.solvable = true;
    for (std::size_t c = 0; c < n; ++c)
        if (pivot_of_col[c] >= 0 && rows[static_cast<std::size_t>(pivot_of_col[c])][n] != 0)
            out.particular |= std::uint32_t{1} << c;
    for (std::size_t f = 0; f < n; ++f) {
        if (pivot_of_col[f] >= 0)
            continue;
        std::uint32_t v = std::uint32_t{1} << f;
        for (std::size_t c = 0; c < n; ++c)
            if (pivot_of_col[c] >= 0 && rows[static_cast<std::size_t>(pivot_of_col[c])][f] != 0)
                v |= std::uint32_t{1} << c;
        out.kernel.push_back(v);
    }
    return out;
}

std::vector<long> mask_to_subset(std::uint32_t mask) {
    std::vector<long> subset;
    for (long i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1u)
            subset.push_back(i);
    return subset;
}

// Lexicographically least subset (as a sorted index list) among all
// solutions of the system.
std::vector<long> least_subset(const F2Solutions& s) {
    if (!s.solvable)
        throw std::logic_error("subset witness requested for an unsolvable system");
    if (s.kernel.size() > 20)
        throw budget_error("witness search space too large");
    std::vector<long> best;
    bool have = false;
    for (std::uint32_t combo = 0; combo < (std::uint32_t{1} << s.kernel.size()); ++combo) {
        std::uint32_t x = s.particular;
        for (std::size_t j = 0; j < s.kernel.size(); ++j)
            if (combo & (std::uint32_t{1} << j))
                x ^= s.kernel[j];
        std::vector<long> subset = mask_to_subset(x);
        if (!have || std::lexicographical_compare(subset.begin(), subset.end(), best.begin(),
                                                  best.end())) {
            best = std::move(subset);
            have = true;
        }
    }
    return best;
}

// 0/1 coordinates for square classes: one slot per prime, then a sign slot.
struct ClassEncoding {
    std::vector<Int> primes; // sorted

    std::size_t coords() const { return primes.size() + 1; }

    std::vector<int> encode(const SquareClass& c) const {
        std::vector<int> v(coords(), 0);
        for (const Int& p : c.primes) {
            auto it = std::lower_bound(primes.begin(), primes.end(), p);
            if (it == primes.end() || *it != p)
                throw std::logic_error("class prime missing from encoding");
            v[static_cast<std::size_t>(it - primes.begin())] = 1;
        }
        if (c.sgn < 0)
            v[primes.size()] = 1;
        return v;
    }
};

ClassEncoding encoding_for(const std::vector<SquareClass>& classes, const std::vector<Int>& extra) {
    std::set<Int> s(extra.begin(), extra.end());
    for (const SquareClass& c : classes)
        s.insert(c.primes.begin(), c.primes.end());
    ClassEncoding e;
    e.primes.assign(s.begin(), s.end());
    return e;
}

std::vector<SquareClass> generator_classes(const ExponentLattice& L) {
    std::vector<SquareClass> classes;
    classes.reserve(L.factorizations.size());
    for (const Factorization& f : L.factorizations)
        classes.push_back(square_class_of(f));
    return classes;
}

// Lex-least generator subset whose class product is trivial and which
// contains an odd number of marked generators: the witness that the sign
// conditions (-1 on marked, +1 elsewhere) are inconsistent.
std::vector<long> odd_square_witness(const ExponentLattice& L, const std::vector<long>& marked) {
    std::vector<SquareClass> classes = generator_classes(L);
    ClassEncoding enc = encoding_for(classes, {});
    std::vector<std::vector<int>> vecs;
    vecs.reserve(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::vector<int> v = enc.encode(classes[i]);
        bool is_marked = std::count(marked.begin(), marked.end(), static_cast<long>(i)) != 0;
        v.push_back(is_marked ? 1 : 0); // marked-parity coordinate
        vecs.push_back(std::move(v));
    }
    std::vector<int> target(enc.coords(), 0);
    target.push_back(1);
    return least_subset(solve_f2(vecs, target));
}

SquareClass minus_three_class() {
    SquareClass c;
    c.sgn = -1;
    c.primes = {Int(3)};
    return c;
}

// Lex-least generator subset whose class product is the class of -3.
std::optional<std::vector<long>> minus_three_witness(const ExponentLattice& L) {
    std::vector<SquareClass> classes = generator_classes(L);
    ClassEncoding enc = encoding_for(classes, {Int(3)});
    std::vector<std::vector<int>> vecs;
    vecs.reserve(classes.size());
    for (const SquareClass& c : classes)
        vecs.push_back(enc.encode(c));
    F2Solutions sol = solve_f2(vecs, enc.encode(minus_three_class()));
    if (!sol.solvable)
        return std::nullopt;
    return least_subset(sol);
}

bool has_cube_generator(const ExponentLattice& L, const std::vector<long>& marked) {
    for (long i : marked) {
        const Factorization& f = L.factorizations[static_cast<std::size_t>(i)];
        bool cube = true;
        for (const auto& [p, e] : f.exponents)
            if (e % 3 != 0)
                cube = false;
        if (cube)
            return true;
    }
    return false;
}

// ---- exact local densities -------------------------------------------------

std::optional<SignSystem> sign_system(const ResolvedProblem& rp) {
    if (rp.spec.kind == ProblemKind::schinzel)
        return schinzel_sign_system(rp.lattice, rp.marked, rp.plus_one);
    return multi_sign_system(rp.lattice, rp.marked);
}

Rat nu_at_two(const ResolvedProblem& rp) {
    Int m = field_degree(rp.lattice, 2);
    if (rp.spec.kind == ProblemKind::rank_r)
        return 1 - make_rational(1, m);
    // The sign conditions constrain every generator class, so when they are
    // consistent exactly one square-class character satisfies them.
    return sign_system(rp) ? make_rational(1, m) : Rat(0);
}

Rat nu_at_odd(const ResolvedProblem& rp, const Int& p) {
    Int deg = field_degree(rp.lattice, p);
    Int k = rp.spec.kind == ProblemKind::rank_r ? Int(1) : k_at_p(rp.lattice, rp.marked, p);
    return 1 - make_rational(k, deg);
}

// Q(x) = sum over nonempty marked subsets I of (-1)^(|I|+1) x^(rank I): the
// generic local condition count, whose family covers all but finitely many
// primes exactly.
std::vector<Int> q_polynomial(const ExponentLattice& L, const std::vector<long>& marked) {
    require_subset_budget(marked.size());
    std::vector<Int> q;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << marked.size()); ++mask) {
        std::vector<long> subset;
        for (std::size_t i = 0; i < marked.size(); ++i)
            if (mask & (std::uint32_t{1} << i))
                subset.push_back(marked[i]);
        auto r = static_cast<std::size_t>(L.subset_rank(subset));
        if (q.size() <= r)
            q.resize(r + 1);
        q[r] += (std::popcount(mask) % 2 == 1) ? 1 : -1;
    }
    return q;
}

void insert_odd_divisor_primes(const SmithForm& sf, long factor_bound, std::set<Int>& out) {
    for (const Int& d : sf.divisors) {
        if (d <= 1)
            continue;
        for (const auto& [p, e] : factor_integer(d, factor_bound).exponents)
            if (p != 2)
                out.insert(p);
    }
}

// Odd primes where some marked subset drops rank: the only places the local
// density can deviate from the family factor.
std::set<Int> odd_candidate_primes(const ResolvedProblem& rp) {
    const ExponentLattice& L = rp.lattice;
    std::set<Int> cand;
    if (rp.spec.kind == ProblemKind::rank_r) {
        insert_odd_divisor_primes(L.snf, rp.spec.factor_bound, cand);
        return cand;
    }
    require_subset_budget(rp.marked.size());
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << rp.marked.size()); ++mask) {
        std::vector<long> subset;
        for (std::size_t i = 0; i < rp.marked.size(); ++i)
            if (mask & (std::uint32_t{1} << i))
                subset.push_back(rp.marked[i]);
        MatZ sub(static_cast<long>(subset.size()), L.matrix.cols);
        for (std::size_t r = 0; r < subset.size(); ++r)
            for (long c = 0; c < L.matrix.cols; ++c)
                sub.at(static_cast<long>(r), c) = L.matrix.at(subset[r], c);
        insert_odd_divisor_primes(smith_normal_form(sub), rp.spec.factor_bound, cand);
    }
    return cand;
}

} // namespace

// ---- problem plumbing -------------------------------------------------------

std::string problem_kind_name(ProblemKind kind) {
    switch (kind) {
    case ProblemKind::rank_r:
        return "rank-r";
    case ProblemKind::multi:
        return "multi";
    case ProblemKind::schinzel:
        return "schinzel";
    }
    throw std::logic_error("unknown problem kind");
}

ProblemKind parse_problem_kind(const std::string& name) {
    if (name == "rank-r")
        return ProblemKind::rank_r;
    if (name == "multi")
        return ProblemKind::multi;
    if (name == "schinzel")
        return ProblemKind::schinzel;
    throw invalid_input_error("unknown problem kind: " + name);
}

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::positive:
        return "positive";
    case Verdict::naive_zero:
        return "naive_zero";
    case Verdict::entanglement_zero:
        return "entanglement_zero";
    }
    throw std::logic_error("unknown verdict");
}

void validate(const ProblemSpec& spec) {
    if (spec.factor_bound < 2)
        throw invalid_input_error("factoring bound must be at least 2");
    // A split-type problem always adjoins 2, so an empty generator list still
    // describes a nontrivial group there.
    if (spec.generators.empty() && spec.kind != ProblemKind::schinzel)
        throw invalid_input_error("at least one generator is required");
    for (const Rat& g : spec.generators) {
        if (g == 0)
            throw invalid_input_error("generators must be nonzero");
        if (spec.kind != ProblemKind::rank_r && (g == 1 || g == -1))
            throw invalid_input_error("primitive-root targets cannot be 1 or -1");
    }
    if (spec.kind == ProblemKind::schinzel) {
        for (const Int& b : spec.split_primes) {
            if (b <= 2 || mpz_probab_prime_p(b.get_mpz_t(), 40) == 0)
                throw invalid_input_error("split primes must be odd primes");
            if (std::count(spec.split_primes.begin(), spec.split_primes.end(), b) != 1)
                throw invalid_input_error("split primes must be distinct");
            if (std::count(spec.generators.begin(), spec.generators.end(), Rat(b)) != 0)
                throw invalid_input_error("split primes must not be primitive-root targets");
        }
    } else if (!spec.split_primes.empty()) {
        throw invalid_input_error("split primes only apply to the mixed problem");
    }
}

ResolvedProblem resolve_problem(const ProblemSpec& spec) {
    validate(spec);
    ResolvedProblem rp;
    rp.spec = spec;
    std::vector<Rat> gens = spec.generators;
    rp.marked = all_indices(static_cast<long>(gens.size()));
    if (spec.kind == ProblemKind::schinzel) {
        for (const Int& b : spec.split_primes) {
            rp.plus_one.push_back(static_cast<long>(gens.size()));
            gens.emplace_back(b);
        }
        rp.plus_one.push_back(static_cast<long>(gens.size()));
        gens.emplace_back(2);
    }
    rp.lattice = ExponentLattice::from_generators(gens, spec.factor_bound);
    if (spec.kind == ProblemKind::rank_r && rp.lattice.free_rank == 0)
        throw invalid_input_error("the group must have positive free rank");
    return rp;
}

// ---- naive density ----------------------------------------------------------

NaiveDensity naive_density(const ResolvedProblem& rp) {
    const ExponentLattice& L = rp.lattice;
    NaiveDensity out;
    out.family = rp.spec.kind == ProblemKind::rank_r
                     ? EulerFamily::surjectivity(L.free_rank)
                     : EulerFamily::from_q(q_polynomial(L, rp.marked));

    Rat nu2 = nu_at_two(rp);
    Rat f2 = out.family.local_factor(2);
    if (f2 == 0) {
        // The generic factor at 2 vanishes; the universal product must then
        // skip p = 2 and the naive density carries the local value directly.
        out.family.omit_two = true;
        out.rho = nu2;
    } else {
        out.rho = nu2 / f2;
    }
    for (const Int& p : odd_candidate_primes(rp))
        out.rho *= nu_at_odd(rp, p) / out.family.local_factor(p);
    return out;
}

// ---- vanishing --------------------------------------------------------------

VanishingReport vanishing_verdict(const ResolvedProblem& rp) {
    const ExponentLattice& L = rp.lattice;
    VanishingReport v;
    v.rank3 = mod_p_image(L, 3).rank;

    if (rp.spec.kind == ProblemKind::rank_r) {
        if (mod_p_image(L, 2).rank == 0) {
            v.verdict = Verdict::naive_zero;
            v.odd_square_subset = odd_square_witness(L, rp.marked);
        }
        return v;
    }

    auto sys = sign_system(rp);
    if (!sys) {
        v.verdict = Verdict::naive_zero;
        v.odd_square_subset = odd_square_witness(L, rp.marked);
        return v;
    }

    if (rp.spec.kind == ProblemKind::schinzel) {
        if (entanglement_schinzel(L, rp.marked, rp.plus_one) == 0)
            v.verdict = Verdict::entanglement_zero;
        return v;
    }

    // Simultaneous problem: the correction vanishes exactly when the class
    // of -3 lies in the group with forced sign +1 and, modulo cubes, every
    // functional kills some target.
    auto w = sys->evaluate(minus_three_class());
    if (!w || *w != 1)
        return v;
    auto witness = minus_three_witness(L);
    if (!witness)
        throw std::logic_error("sign value forced for a class outside the group");
    v.minus_three_subset = *witness;

    bool covered;
    v.cube_generator = has_cube_generator(L, rp.marked);
    auto n = static_cast<long>(rp.marked.size());
    if (v.cube_generator) {
        // A cube target is killed by every functional.
        covered = true;
    } else if (n <= 3 || v.rank3 == 1 || v.rank3 >= n) {
        // Too few distinct kill-hyperplanes to cover the functionals: at
        // least four are needed, parallel targets give one, and independent
        // targets leave a functional alive on all of them.
        covered = false;
    } else {
        v.exhaustive_check = true;
        Int space;
        mpz_ui_pow_ui(space.get_mpz_t(), 3, static_cast<unsigned long>(v.rank3));
        covered = k_at_p(L, rp.marked, 3) == space;
    }
    if (covered)
        v.verdict = Verdict::entanglement_zero;
    return v;
}

// ---- correction and the assembled report ------------------------------------

Rat entanglement(const ResolvedProblem& rp) {
    switch (rp.spec.kind) {
    case ProblemKind::rank_r:
        return entanglement_rank_r(rp.lattice);
    case ProblemKind::multi:
        return entanglement_multi(rp.lattice, rp.marked);
    case ProblemKind::schinzel:
        return entanglement_schinzel(rp.lattice, rp.marked, rp.plus_one);
    }
    throw std::logic_error("unknown problem kind");
}

DensityReport total_density(const ProblemSpec& spec, long digits) {
    if (digits < 1 || digits > 1000)
        throw invalid_input_error("digits must be between 1 and 1000");
    ResolvedProblem rp = resolve_problem(spec);

    DensityReport rep;
    rep.spec = spec;
    rep.digits = digits;
    rep.vanishing = vanishing_verdict(rp);
    rep.naive = naive_density(rp);

    if (rep.vanishing.verdict == Verdict::naive_zero) {
        if (rep.naive.rho != 0)
            throw std::logic_error("naive-zero verdict with nonzero naive density");
        rep.correction = 0;
    } else {
        if (rep.naive.rho == 0)
            throw std::logic_error("vanishing naive density without a naive-zero verdict");
        rep.correction = entanglement(rp);
        bool zero = rep.correction == 0;
        if (zero != (rep.vanishing.verdict == Verdict::entanglement_zero))
            throw std::logic_error("correction value disagrees with the vanishing verdict");
    }

    rep.constant = euler_product(rep.naive.family, digits);
    PrecisionGuard guard(static_cast<unsigned>(digits) + 15);
    if (rep.vanishing.verdict != Verdict::positive) {
        rep.total = CertifiedReal{Real(0), Real(0)};
    } else {
        Real factor = to_real(rep.naive.rho * rep.correction);
        Real value = factor * rep.constant.value;
        // The exact factor is positive here; fold the product rounding into
        // a one-ulp style fudge on top of the constant's certified bound.
        Real err = factor * rep.constant.error_bound + abs(value) * pow(Real(10), -(digits + 8));
        rep.total = CertifiedReal{value, err};
    }
    return rep;
}

// ---- restricted (finite-model) density --------------------------------------

Rat restricted_density(const ResolvedProblem& rp, const std::vector<Int>& primes) {
    std::set<Int> ps;
    for (const Int& p : primes) {
        if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
            throw invalid_input_error("restriction set must consist of primes");
        if (!ps.insert(p).second)
            throw invalid_input_error("restriction set must be duplicate-free");
    }

    Rat out = 1;
    for (const Int& p : ps)
        out *= p == 2 ? nu_at_two(rp) : nu_at_odd(rp, p);
    if (out == 0 || ps.count(2) == 0)
        return out; // no visible entanglement without the prime 2

    // Correction visible within the restriction: the character sum over the
    // classes supported inside the prime set.
    const ExponentLattice& L = rp.lattice;
    std::vector<SquareClass> classes = square_classes(L);
    std::vector<Rat> weights;
    if (rp.spec.kind == ProblemKind::rank_r) {
        weights = rank_r_weights(classes);
    } else {
        auto sys = sign_system(rp);
        if (!sys)
            throw std::logic_error("restricted correction for an inconsistent sign system");
        weights = sign_weights(classes, *sys);
    }

    std::vector<SquareClass> kept;
    std::vector<Rat> kept_weights;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        bool inside = true;
        for (const Int& q : classes[i].odd_primes())
            if (ps.count(q) == 0)
                inside = false;
        if (!inside)
            continue;
        kept.push_back(classes[i]);
        kept_weights.push_back(weights[i]);
    }

    std::map<Int, OddLocal> locals;
    for (const Int& p : ps) {
        if (p == 2)
            continue;
        Int k = rp.spec.kind == ProblemKind::rank_r ? Int(1) : k_at_p(L, rp.marked, p);
        locals[p] = OddLocal{k, field_degree(L, p)};
    }
    return out * character_sum(kept, kept_weights, locals);
}

Rat restricted_density(const ProblemSpec& spec, const std::vector<Int>& primes) {
    ResolvedProblem rp = resolve_problem(spec);
    return restricted_density(rp, primes);
}

} // namespace rootdens
