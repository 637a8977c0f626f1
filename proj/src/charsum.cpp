#include "rootdens/charsum.hpp"

#include "rootdens/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace rootdens {

namespace {

// -k/(deg - k); the denominator is positive because k <= deg/2 always.
// k = 0 happens when the problem places no condition at this prime (no
// marked generator): the local average of a nontrivial character is then
// exactly zero, and the ratio with it.
Rat local_ratio(const OddLocal& loc) {
    if (loc.k < 0 || 2 * loc.k > loc.deg)
        throw std::logic_error("local kill count out of range");
    return make_rational(-loc.k, Int(loc.deg - loc.k));
}

const OddLocal& local_at(const std::map<Int, OddLocal>& odd_locals, const Int& q) {
    auto it = odd_locals.find(q);
    if (it == odd_locals.end())
        throw std::logic_error("missing local data at an odd prime of a square class");
    return it->second;
}

Rat half() { return make_rational(1, 2); }

void require_distinct_odd_primes(const std::vector<Int>& primes, const char* what) {
    for (const Int& p : primes) {
        if (p <= 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
            throw invalid_input_error(std::string(what) + " must be odd primes");
        if (std::count(primes.begin(), primes.end(), p) != 1)
            throw invalid_input_error(std::string(what) + " must be distinct");
    }
}

// D = c/(1-c) with c = k/deg at an odd prime of the lattice.
Rat closed_form_ratio(const ExponentLattice& L, const std::vector<long>& marked, const Int& a) {
    Rat c = make_rational(k_at_p(L, marked, a), field_degree(L, a));
    return c / (1 - c);
}

} // namespace

Rat character_sum(const std::vector<SquareClass>& classes,
                  const std::vector<Rat>& values,
                  const std::map<Int, OddLocal>& odd_locals) {
    if (classes.size() != values.size())
        throw std::logic_error("character sum shape mismatch");
    // One entry per pair {b, -b}, keyed by the odd primes of the class.
    std::map<std::vector<Int>, Rat> pairs;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const SquareClass& b = classes[i];
        if (b.is_even())
            continue;
        auto [it, fresh] = pairs.emplace(b.odd_primes(), values[i]);
        if (!fresh && it->second != values[i])
            throw std::logic_error("a class pair was listed with two different weights");
    }
    Rat e = 0;
    for (const auto& [key, weight] : pairs) {
        if (key.empty() && weight != 1)
            throw std::logic_error("identity class must carry weight 1");
        if (weight == 0)
            continue;
        Rat term = weight;
        for (const Int& q : key)
            term *= local_ratio(local_at(odd_locals, q));
        e += term;
    }
    return e;
}

std::vector<Rat> rank_r_weights(const std::vector<SquareClass>& classes) {
    Int m = static_cast<long>(classes.size());
    bool has_minus_one = false;
    for (const SquareClass& c : classes)
        if (c.sgn < 0 && c.primes.empty())
            has_minus_one = true;
    std::vector<Rat> values;
    values.reserve(classes.size());
    for (const SquareClass& c : classes) {
        if (c.is_even()) {
            values.push_back(0);
        } else if (c.odd_primes().empty()) {
            values.push_back(1);
        } else if (c.has_odd_discriminant() || has_minus_one) {
            // The odd-discriminant member of the pair lies in the group.
            values.push_back(make_rational(-1, Int(m - 1)));
        } else {
            values.push_back(0);
        }
    }
    return values;
}

std::vector<Rat> sign_weights(const std::vector<SquareClass>& classes, const SignSystem& sys) {
    std::vector<Rat> values;
    values.reserve(classes.size());
    for (const SquareClass& c : classes) {
        if (c.is_even()) {
            values.push_back(0);
            continue;
        }
        auto v = sys.evaluate(odd_discriminant_representative(c));
        values.push_back(v ? Rat(*v) : Rat(0));
    }
    return values;
}

std::map<Int, OddLocal> odd_local_data(const ExponentLattice& L, const std::vector<long>& marked) {
    std::map<Int, OddLocal> locals;
    for (const Int& q : critical_primes(L)) {
        if (q == 2)
            continue;
        locals[q] = OddLocal{k_at_p(L, marked, q), field_degree(L, q)};
    }
    return locals;
}

std::map<Int, OddLocal> unit_local_data(const ExponentLattice& L) {
    std::map<Int, OddLocal> locals;
    for (const Int& q : critical_primes(L))
        if (q != 2)
            locals[q] = OddLocal{1, field_degree(L, q)};
    return locals;
}

Rat entanglement_rank_r(const ExponentLattice& L) {
    std::vector<SquareClass> classes = square_classes(L);
    return character_sum(classes, rank_r_weights(classes), unit_local_data(L));
}

Rat entanglement_rank_r_factored(const ExponentLattice& L) {
    std::vector<SquareClass> classes = square_classes(L);
    Int m = static_cast<long>(classes.size());
    if (m == 1)
        return 1;
    Rat s = 0;
    for (const SquareClass& b : classes) {
        if (!b.has_odd_discriminant())
            continue;
        Rat term = 1;
        for (const Int& q : b.odd_primes())
            term *= make_rational(-1, Int(field_degree(L, q) - 1));
        s += term;
    }
    Rat inner = 1 - s / m;
    return inner / (1 - make_rational(1, m));
}

std::optional<SignSystem> multi_sign_system(const ExponentLattice& L,
                                            const std::vector<long>& marked) {
    std::vector<SquareClass> classes;
    std::vector<int> targets;
    for (long i : marked) {
        classes.push_back(square_class_of(L.factorizations[static_cast<std::size_t>(i)]));
        targets.push_back(-1);
    }
    return SignSystem::solve(classes, targets);
}

std::optional<SignSystem> schinzel_sign_system(const ExponentLattice& L,
                                               const std::vector<long>& marked,
                                               const std::vector<long>& plus_one) {
    std::vector<SquareClass> classes;
    std::vector<int> targets;
    for (long i : marked) {
        classes.push_back(square_class_of(L.factorizations[static_cast<std::size_t>(i)]));
        targets.push_back(-1);
    }
    for (long i : plus_one) {
        classes.push_back(square_class_of(L.factorizations[static_cast<std::size_t>(i)]));
        targets.push_back(1);
    }
    return SignSystem::solve(classes, targets);
}

Rat entanglement_multi(const ExponentLattice& L, const std::vector<long>& marked) {
    auto sys = multi_sign_system(L, marked);
    if (!sys)
        throw std::logic_error("sign conditions unsolvable; vanishing must be handled first");
    std::vector<SquareClass> classes = square_classes(L);
    return character_sum(classes, sign_weights(classes, *sys), odd_local_data(L, marked));
}

Rat entanglement_schinzel(const ExponentLattice& L, const std::vector<long>& marked,
                          const std::vector<long>& plus_one) {
    auto sys = schinzel_sign_system(L, marked, plus_one);
    if (!sys)
        throw std::logic_error("sign conditions unsolvable; vanishing must be handled first");
    std::vector<SquareClass> classes = square_classes(L);
    return character_sum(classes, sign_weights(classes, *sys), odd_local_data(L, marked));
}

Rat multi_closed_form(const std::vector<Int>& primes, long factor_bound) {
    require_distinct_odd_primes(primes, "closed-form generators");
    std::vector<Rat> gens;
    std::vector<long> marked;
    for (const Int& p : primes) {
        marked.push_back(static_cast<long>(gens.size()));
        gens.emplace_back(p);
    }
    if (gens.empty())
        return 1;
    ExponentLattice L = ExponentLattice::from_generators(gens, factor_bound);

    Rat plain = 1, twisted = 1;
    for (const Int& a : primes) {
        Rat d = closed_form_ratio(L, marked, a);
        plain *= 1 + d;
        twisted *= 1 + chi4(a) * d;
    }
    return half() * (plain + twisted);
}

Rat schinzel_closed_form(const std::vector<Int>& a_primes, const std::vector<Int>& b_primes,
                         long factor_bound) {
    require_distinct_odd_primes(a_primes, "primitive-root primes");
    require_distinct_odd_primes(b_primes, "split primes");
    for (const Int& b : b_primes)
        if (std::count(a_primes.begin(), a_primes.end(), b) != 0)
            throw invalid_input_error("primitive-root and split sets must be disjoint");

    // The group is generated by both prime sets together with 2; the adjoined
    // 2 never meets an odd discriminant and contributes no product factor.
    std::vector<Rat> gens;
    std::vector<long> marked;
    for (const Int& p : a_primes) {
        marked.push_back(static_cast<long>(gens.size()));
        gens.emplace_back(p);
    }
    for (const Int& p : b_primes)
        gens.emplace_back(p);
    gens.emplace_back(2);
    ExponentLattice L = ExponentLattice::from_generators(gens, factor_bound);

    Rat plain = 1, twisted = 1;
    for (const Int& a : a_primes) {
        Rat d = closed_form_ratio(L, marked, a);
        plain *= 1 + d;
        twisted *= 1 + chi4(a) * d;
    }
    for (const Int& b : b_primes) {
        Rat d = closed_form_ratio(L, marked, b);
        plain *= 1 - d;
        twisted *= 1 - chi4(b) * d;
    }
    return half() * (plain + twisted);
}

} // namespace rootdens
