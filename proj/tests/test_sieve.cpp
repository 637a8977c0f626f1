#include "doctest.h"

#include "rootdens/errors.hpp"
#include "rootdens/sieve.hpp"

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

TEST_CASE("prime streaming") {
    CHECK(primes_up_to(1).count() == 0);
    CHECK(primes_up_to(2).count() == 1);
    CHECK(primes_up_to(100).count() == 25);
    CHECK(primes_up_to(1000000).count() == 78498);

    std::vector<std::uint64_t> first;
    primes_up_to(30).for_each([&](std::uint64_t q) { first.push_back(q); });
    CHECK(first == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});

    // Counts are independent of the segmentation.
    CHECK(primes_up_to(1000, 64).count() == primes_up_to(1000).count());

    CHECK_THROWS_AS(primes_up_to(static_cast<std::uint64_t>(2000000000) * 2),
                    budget_error);
}

TEST_CASE("residues and primitive roots") {
    auto half = residue_mod(Rat(1, 2), 7);
    REQUIRE(half.has_value());
    CHECK(*half == 4);
    CHECK_FALSE(residue_mod(Rat(3, 7), 7).has_value());
    CHECK_FALSE(residue_mod(Rat(14), 7).has_value());

    CHECK(is_primitive_root(Rat(3), 7) == true);
    CHECK(is_primitive_root(Rat(2), 7) == false);
    CHECK(is_primitive_root(Rat(2), 11) == true);
    CHECK(is_primitive_root(Rat(1, 2), 11) == true); // inverse of a generator
    CHECK_FALSE(is_primitive_root(Rat(7), 7).has_value());
}

TEST_CASE("prime classification") {
    auto rp = resolve_problem(make_spec(ProblemKind::rank_r, {Rat(5)}));
    CHECK(classify_prime(rp, 5) == PrimeStatus::not_eligible);
    CHECK(classify_prime(rp, 2) == PrimeStatus::qualifies);
    CHECK(classify_prime(rp, 3) == PrimeStatus::qualifies);
    CHECK(classify_prime(rp, 11) == PrimeStatus::fails);
    CHECK(classify_prime(rp, 23) == PrimeStatus::qualifies);

    // The mixed problem always folds 2 into the group.
    auto mixed = resolve_problem(make_spec(ProblemKind::schinzel, {Rat(5)}, {Int(13)}));
    CHECK(classify_prime(mixed, 2) == PrimeStatus::not_eligible);
    CHECK(classify_prime(mixed, 13) == PrimeStatus::not_eligible);
    // 5 generates mod 23, 13 = 6^2 and 2 = 5^2 mod 23.
    CHECK(classify_prime(mixed, 23) == PrimeStatus::qualifies);
    // 5 generates mod 7 but 13 = 6 is not a square mod 7.
    CHECK(classify_prime(mixed, 7) == PrimeStatus::fails);
}

TEST_CASE("empirical counts on pinned instances") {
    auto two = empirical_density(make_spec(ProblemKind::rank_r, {Rat(2)}), 100);
    CHECK(two.eligible == 24);
    CHECK(two.qualifying == 12);
    CHECK(two.observed == doctest::Approx(0.5));

    auto pair = empirical_density(make_spec(ProblemKind::multi, {Rat(3), Rat(5)}),
                                  100000);
    CHECK(pair.eligible == 9590);
    CHECK(pair.qualifying == 1563);
    CHECK(pair.deviation == doctest::Approx(pair.observed - pair.predicted));

    // Thread count and segmentation never change the tally.
    auto threaded = empirical_density(make_spec(ProblemKind::multi, {Rat(3), Rat(5)}),
                                      100000, 4, 1 << 12);
    CHECK(threaded.eligible == pair.eligible);
    CHECK(threaded.qualifying == pair.qualifying);

    // The reciprocity-obstructed instance never qualifies.
    auto zero = empirical_density(
        make_spec(ProblemKind::multi, {Rat(5), Rat(-15), Rat(600), Rat(1029)}), 100000);
    CHECK(zero.qualifying == 0);
    CHECK(zero.predicted == 0);
}

TEST_CASE("sieve budgets") {
    auto spec = make_spec(ProblemKind::rank_r, {Rat(2)});
    CHECK_THROWS_AS(empirical_density(spec, static_cast<std::uint64_t>(2000000000) * 2),
                    budget_error);
    CHECK_THROWS_AS(empirical_density(spec, 1000, 1, 1L << 30), budget_error);
    CHECK_THROWS_AS(empirical_density(spec, 1000, 0), invalid_input_error);
}
