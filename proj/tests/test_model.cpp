#include "doctest.h"

#include "rootdens/errors.hpp"
#include "rootdens/model.hpp"

using namespace rootdens;

namespace {

ProblemSpec make_spec(ProblemKind kind, std::vector<Rat> gens,
                      std::vector<Int> split = {}) {
    ProblemSpec s;
    s.kind = kind;
    s.generators = std::move(gens);
    s.split_primes = std::move(split);
    return s;
}

} // namespace

TEST_CASE("model counts on pinned instances") {
    auto md = finite_model_density(make_spec(ProblemKind::rank_r, {Rat(5)}));
    CHECK(md.primes == std::vector<Int>{2, 5});
    CHECK(md.total_states == 160);
    CHECK(md.kernel_states == 80);
    CHECK(md.qualifying_states == 40);
    CHECK(md.density == Rat(1, 2));

    auto pair = finite_model_density(make_spec(ProblemKind::rank_r, {Rat(2), Rat(3)}));
    CHECK(pair.total_states == 288);
    CHECK(pair.kernel_states == 72);
    CHECK(pair.qualifying_states == 51);
    CHECK(pair.density == Rat(17, 24));

    auto sim = finite_model_density(make_spec(ProblemKind::multi, {Rat(3), Rat(5)}));
    CHECK(sim.total_states == 28800);
    CHECK(sim.density == Rat(13, 72));

    auto mixed = finite_model_density(
        make_spec(ProblemKind::schinzel, {Rat(5)}, {Int(3)}));
    CHECK(mixed.total_states == 864000);
    CHECK(mixed.density == Rat(5, 48));

    auto empty = finite_model_density(make_spec(ProblemKind::schinzel, {}));
    CHECK(empty.density == Rat(1, 2));

    auto zero = finite_model_density(make_spec(ProblemKind::multi, {Rat(8), Rat(-6)}));
    CHECK(zero.qualifying_states == 0);
    CHECK(zero.density == 0);
}

TEST_CASE("model equals the restricted density") {
    std::vector<ProblemSpec> specs = {
        make_spec(ProblemKind::rank_r, {Rat(2)}),
        make_spec(ProblemKind::rank_r, {Rat(8)}),
        make_spec(ProblemKind::rank_r, {Rat(2), Rat(5)}),
        make_spec(ProblemKind::multi, {Rat(2), Rat(3)}),
        make_spec(ProblemKind::multi, {Rat(-3)}),
        make_spec(ProblemKind::schinzel, {}, {Int(13)}),
    };
    for (const auto& spec : specs) {
        auto rp = resolve_problem(spec);
        auto md = finite_model_density(rp);
        CHECK(md.density == restricted_density(rp, md.primes));
    }
}

TEST_CASE("extra enumeration levels refine the density") {
    auto spec = make_spec(ProblemKind::rank_r, {Rat(5)});
    auto md = finite_model_density(spec, {Int(2), Int(3), Int(5)});
    CHECK(md.primes == std::vector<Int>{2, 3, 5});
    CHECK(md.density == Rat(5, 12));
    CHECK(md.density == restricted_density(spec, md.primes));
}

TEST_CASE("model input validation and budget") {
    auto spec = make_spec(ProblemKind::rank_r, {Rat(5)});
    // The level set must contain every critical prime, and only primes.
    CHECK_THROWS_AS(finite_model_density(spec, {Int(2)}), invalid_input_error);
    CHECK_THROWS_AS(finite_model_density(spec, {Int(2), Int(5), Int(6)}),
                    invalid_input_error);
    CHECK_THROWS_AS(finite_model_density(spec, {}, 100), budget_error);
}

TEST_CASE("flip invariance and functional counts") {
    CHECK(model_flip_invariance(resolve_problem(make_spec(ProblemKind::rank_r, {Rat(5)}))));
    CHECK(model_flip_invariance(
        resolve_problem(make_spec(ProblemKind::multi, {Rat(3), Rat(5)}))));
    CHECK(model_flip_invariance(resolve_problem(
        make_spec(ProblemKind::schinzel, {Rat(5)}, {Int(13)}))));

    ExponentLattice L = ExponentLattice::from_generators({Rat(3), Rat(5)});
    CHECK(k_p_by_enumeration(L, {0, 1}, Int(3)) == 5);
    CHECK(k_p_by_enumeration(L, {0, 1}, Int(5)) == 9);
    CHECK(k_p_by_enumeration(L, {0, 1}, Int(2)) == 3);
    for (long p : {2L, 3L, 5L, 7L})
        CHECK(k_p_by_enumeration(L, {0, 1}, Int(p)) == k_at_p(L, {0, 1}, Int(p)));

    ExponentLattice M = ExponentLattice::from_generators({Rat(2), Rat(3), Rat(6)});
    for (long p : {2L, 3L, 5L})
        CHECK(k_p_by_enumeration(M, {0, 2}, Int(p)) == k_at_p(M, {0, 2}, Int(p)));
}
