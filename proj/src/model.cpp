#include "rootdens/model.hpp"

#include "rootdens/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace rootdens {

namespace {

int chi4(long u8) { return u8 % 4 == 1 ? 1 : -1; }
int chi8(long u8) { return (u8 % 8 == 1 || u8 % 8 == 7) ? 1 : -1; }

int legendre(long u, long p) {
    Int a(u), q(p);
    return mpz_legendre(a.get_mpz_t(), q.get_mpz_t());
}

bool parity(std::uint32_t bits) { return __builtin_popcount(bits) & 1; }

std::uint32_t to_bitmask(const std::vector<Int>& coords) {
    if (coords.size() > 31)
        throw budget_error("model state space at 2 is too large");
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (mod_floor(coords[i], 2) == 1) m |= std::uint32_t(1) << i;
    return m;
}

// One enumerated local level.  masks[t] has bit j set when the j-th
// reciprocity character evaluates to -1 on state t; sbits[t] says whether the
// local primitive-root condition holds there.
struct Component {
    std::vector<std::uint32_t> masks;
    std::vector<std::uint8_t> sbits;
};

// A reciprocity character of the group, attached to the square class with
// signed squarefree representative `rep`: its value on a model state is
// h(rep) * eps(u_8) * prod_{odd q | rep} (u_q / q).
struct CharacterData {
    std::uint32_t h_mask = 0;     // coordinates of the class in the V basis
    int eps = 0;                  // 0: trivial, 1: chi4, 2: chi8, 3: chi4*chi8
    std::vector<Int> odd_primes;  // odd primes dividing the representative
};

int eps_selector(const Int& rep) {
    Int r = mod_floor(rep, 8);
    if (r == 1 || r == 5) return 0;
    if (r == 3 || r == 7) return 1;
    if (r == 2) return 2;
    if (r == 6) return 3;
    throw std::logic_error("square-class representative is divisible by 4");
}

int eps_value(int eps, long u8) {
    switch (eps) {
    case 0: return 1;
    case 1: return chi4(u8);
    case 2: return chi8(u8);
    case 3: return chi4(u8) * chi8(u8);
    default: throw std::logic_error("unknown 2-adic character selector");
    }
}

Factorization factorization_of_row(const std::vector<Int>& row,
                                   const std::vector<Int>& support,
                                   bool sign_column) {
    Factorization f;
    f.sign = 1;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (mod_floor(row[i], 2) == 1) f.exponents[support[i]] = 1;
    if (sign_column && mod_floor(row[support.size()], 2) == 1) f.sign = -1;
    return f;
}

Int representative_of(const Factorization& f) {
    Int v = f.sign;
    for (const auto& [p, e] : f.exponents)
        for (long i = 0; i < e; ++i) v *= p;
    return v;
}

std::uint32_t coords_in_v(const ModPImage& v_img, const Factorization& f) {
    auto coords = v_img.coords_of(f);
    if (!coords)
        throw std::logic_error("a group element fell outside its own square-class span");
    return to_bitmask(*coords);
}

struct ModelData {
    ModPImage v_img;                        // square classes of the group and -1
    std::uint32_t neg_mask = 0;             // class of -1 in the V basis
    std::vector<std::uint32_t> gen_masks;   // every generator's class in the V basis
    std::vector<CharacterData> characters;  // one per basis class of the group's square classes
};

ModelData build_model_data(const ResolvedProblem& rp) {
    ModelData md;
    std::vector<Rat> with_minus_one = rp.lattice.generators;
    with_minus_one.push_back(Rat(-1));
    ExponentLattice lv = ExponentLattice::from_generators(with_minus_one, rp.spec.factor_bound);
    md.v_img = mod_p_image(lv, 2);
    if (md.v_img.rank > 31)
        throw budget_error("model state space at 2 is too large");
    long n = rp.lattice.num_generators();
    for (long i = 0; i < n; ++i)
        md.gen_masks.push_back(to_bitmask(md.v_img.generator_coords[i]));
    md.neg_mask = to_bitmask(md.v_img.generator_coords[n]);

    ModPImage img2 = mod_p_image(rp.lattice, Int(2));
    if (img2.rank > 31)
        throw budget_error("too many reciprocity constraints for the model");
    for (const auto& row : img2.basis) {
        Factorization f = factorization_of_row(row, img2.support, img2.sign_column);
        CharacterData cd;
        cd.h_mask = coords_in_v(md.v_img, f);
        cd.eps = eps_selector(representative_of(f));
        for (const auto& [q, e] : f.exponents) cd.odd_primes.push_back(q);
        md.characters.push_back(cd);
    }
    return md;
}

Component build_two_component(const ResolvedProblem& rp, const ModelData& md) {
    Component comp;
    long dim = md.v_img.rank;
    static const long units8[4] = {1, 3, 5, 7};
    for (std::uint32_t h = 0; h < (std::uint32_t(1) << dim); ++h) {
        for (long u8 : units8) {
            // The action on sqrt(-1) is tied to the action on the 8th roots
            // of unity; only consistent pairs are states.
            if (parity(h & md.neg_mask) != (chi4(u8) == -1)) continue;
            std::uint32_t mask = 0;
            for (std::size_t j = 0; j < md.characters.size(); ++j) {
                bool minus = parity(h & md.characters[j].h_mask) !=
                             (eps_value(md.characters[j].eps, u8) == -1);
                if (minus) mask |= std::uint32_t(1) << j;
            }
            bool s = true;
            switch (rp.spec.kind) {
            case ProblemKind::rank_r: {
                // The group must contain a nonsquare.
                s = false;
                for (std::uint32_t gm : md.gen_masks)
                    if (parity(h & gm)) { s = true; break; }
                break;
            }
            case ProblemKind::multi:
            case ProblemKind::schinzel: {
                for (long i : rp.marked)
                    if (!parity(h & md.gen_masks[i])) { s = false; break; }
                for (long i : rp.plus_one)
                    if (s && parity(h & md.gen_masks[i])) { s = false; break; }
                break;
            }
            }
            comp.masks.push_back(mask);
            comp.sbits.push_back(s ? 1 : 0);
        }
    }
    return comp;
}

Component build_odd_component(const ResolvedProblem& rp, const ModelData& md, const Int& p) {
    Component comp;
    long pl = p.get_si();
    ModPImage img = mod_p_image(rp.lattice, p);
    long rank = img.rank;

    std::vector<std::vector<long>> marked_coords;
    if (rp.spec.kind != ProblemKind::rank_r) {
        for (long i : rp.marked) {
            std::vector<long> c;
            for (const Int& x : img.generator_coords[i]) c.push_back(mod_floor(x, p).get_si());
            marked_coords.push_back(c);
        }
    }

    // Which reciprocity characters involve this prime, and the value of the
    // local Dirichlet character at each unit.
    std::uint32_t involved = 0;
    for (std::size_t j = 0; j < md.characters.size(); ++j)
        for (const Int& q : md.characters[j].odd_primes)
            if (q == p) involved |= std::uint32_t(1) << j;

    std::vector<long> phi(rank, 0);
    while (true) {
        bool phi_zero = std::all_of(phi.begin(), phi.end(), [](long x) { return x == 0; });
        bool kills_marked = false;
        for (const auto& c : marked_coords) {
            long dot = 0;
            for (long t = 0; t < rank; ++t) dot += phi[t] * c[t];
            if (dot % pl == 0) { kills_marked = true; break; }
        }
        for (long u = 1; u < pl; ++u) {
            std::uint32_t mask = (legendre(u, pl) == -1) ? involved : 0;
            bool s = true;
            if (u == 1) {
                if (rp.spec.kind == ProblemKind::rank_r)
                    s = !phi_zero;
                else
                    s = !kills_marked;
            }
            comp.masks.push_back(mask);
            comp.sbits.push_back(s ? 1 : 0);
        }
        long t = 0;
        while (t < rank && ++phi[t] == pl) phi[t++] = 0;
        if (t == rank) break;
    }
    return comp;
}

std::vector<Int> normalize_primes(const ResolvedProblem& rp, std::vector<Int> primes) {
    if (primes.empty()) primes = critical_primes(rp.lattice);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const Int& p : primes) {
        if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
            throw invalid_input_error("model levels must be prime");
        if (p != 2 && !p.fits_slong_p())
            throw invalid_input_error("model level is too large to enumerate");
    }
    for (const Int& p : critical_primes(rp.lattice))
        if (!std::binary_search(primes.begin(), primes.end(), p))
            throw invalid_input_error("model levels must include every critical prime");
    return primes;
}

} // namespace

ModelDensity finite_model_density(const ResolvedProblem& rp, std::vector<Int> primes,
                                  long state_bound) {
    ModelDensity out;
    out.primes = normalize_primes(rp, std::move(primes));

    ModelData md = build_model_data(rp);

    // Predict |H| before materializing anything.
    Int total = Int(1) << (md.v_img.rank + 1);
    for (const Int& p : out.primes) {
        if (p == 2) continue;
        ModPImage img = mod_p_image(rp.lattice, p);
        Int sz = p - 1;
        for (long t = 0; t < img.rank; ++t) sz *= p;
        total *= sz;
        if (total > state_bound)
            throw budget_error("model state space exceeds the configured bound");
    }
    out.total_states = total;

    std::vector<Component> comps;
    comps.push_back(build_two_component(rp, md));
    for (const Int& p : out.primes)
        if (p != 2) comps.push_back(build_odd_component(rp, md, p));

    unsigned long kernel = 0, qualifying = 0;
    std::function<void(std::size_t, std::uint32_t, bool)> walk =
        [&](std::size_t ci, std::uint32_t acc, bool s) {
            if (ci == comps.size()) {
                if (acc == 0) {
                    ++kernel;
                    if (s) ++qualifying;
                }
                return;
            }
            const Component& c = comps[ci];
            for (std::size_t t = 0; t < c.masks.size(); ++t)
                walk(ci + 1, acc ^ c.masks[t], s && c.sbits[t]);
        };
    walk(0, 0, true);

    if (kernel == 0)
        throw std::logic_error("the reciprocity kernel of the model is empty");
    out.kernel_states = Int(kernel);
    out.qualifying_states = Int(qualifying);
    out.density = make_rational(Int(qualifying), Int(kernel));
    return out;
}

ModelDensity finite_model_density(const ProblemSpec& spec, std::vector<Int> primes,
                                  long state_bound) {
    return finite_model_density(resolve_problem(spec), std::move(primes), state_bound);
}

bool model_flip_invariance(const ResolvedProblem& rp, long state_bound) {
    ModelData md = build_model_data(rp);
    long dim = md.v_img.rank;
    if ((Int(1) << (dim + 1)) > state_bound)
        throw budget_error("model state space exceeds the configured bound");

    ModPImage img2 = mod_p_image(rp.lattice, Int(2));
    static const long units8[4] = {1, 3, 5, 7};
    for (const auto& row : img2.basis) {
        Factorization f = factorization_of_row(row, img2.support, img2.sign_column);
        Factorization g = f;
        g.sign = -f.sign;

        CharacterData cf{coords_in_v(md.v_img, f), eps_selector(representative_of(f)), {}};
        CharacterData cg{coords_in_v(md.v_img, g), eps_selector(representative_of(g)), {}};

        // The odd local parts coincide (same odd primes), so pointwise
        // agreement is decided entirely on the component at 2.
        for (std::uint32_t h = 0; h < (std::uint32_t(1) << dim); ++h)
            for (long u8 : units8) {
                if (parity(h & md.neg_mask) != (chi4(u8) == -1)) continue;
                int vf = (parity(h & cf.h_mask) ? -1 : 1) * eps_value(cf.eps, u8);
                int vg = (parity(h & cg.h_mask) ? -1 : 1) * eps_value(cg.eps, u8);
                if (vf != vg) return false;
            }
    }
    return true;
}

Int k_p_by_enumeration(const ExponentLattice& L, const std::vector<long>& marked,
                       const Int& p, long dual_bound) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
        throw invalid_input_error("the level must be prime");
    for (long i : marked)
        if (i < 0 || i >= L.num_generators())
            throw invalid_input_error("marked index out of range");
    ModPImage img = mod_p_image(L, p);
    long pl = p.get_si();
    long rank = img.rank;

    Int duals = 1;
    for (long t = 0; t < rank; ++t) {
        duals *= p;
        if (duals > dual_bound)
            throw budget_error("too many functionals to enumerate");
    }

    std::vector<std::vector<long>> coords;
    for (long i : marked) {
        std::vector<long> c;
        for (const Int& x : img.generator_coords[i]) c.push_back(mod_floor(x, p).get_si());
        coords.push_back(c);
    }

    Int count = 0;
    std::vector<long> phi(rank, 0);
    while (true) {
        for (const auto& c : coords) {
            long dot = 0;
            for (long t = 0; t < rank; ++t) dot += phi[t] * c[t];
            if (dot % pl == 0) {
                ++count;
                break;
            }
        }
        long t = 0;
        while (t < rank && ++phi[t] == pl) phi[t++] = 0;
        if (t == rank) break;
    }
    return count;
}

} // namespace rootdens
