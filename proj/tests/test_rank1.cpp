#include "doctest.h"

#include "rootdens/density.hpp"
#include "rootdens/errors.hpp"
#include "rootdens/rank1.hpp"

using namespace rootdens;

namespace {

double exact_total(long a) {
    ProblemSpec spec;
    spec.kind = ProblemKind::rank_r;
    spec.generators = {Rat(a)};
    auto rep = total_density(spec, 20);
    return rep.total.value.convert_to<double>();
}

} // namespace

TEST_CASE("first inclusion-exclusion terms") {
    // With a single term only the trivial field counts.
    auto one = rank1_inclusion_exclusion(Int(2), 1);
    PrecisionGuard guard(30);
    CHECK(one.value == 1);

    // n = 2 subtracts 1/[degree of the quadratic-Kummer field]: for a = 2
    // that field has degree 2.
    auto two = rank1_inclusion_exclusion(Int(2), 2);
    CHECK(two.value == Real("0.5"));

    // Tail bounds shrink with the truncation point.
    auto coarse = rank1_inclusion_exclusion(Int(2), 100);
    auto fine = rank1_inclusion_exclusion(Int(2), 10000);
    CHECK(fine.tail_bound < coarse.tail_bound);
    CHECK(fine.tail_bound > 0);
}

TEST_CASE("agreement with the exact density") {
    // The halving pattern of the field degrees differs between a = 1 mod 4
    // (doubled conductor) and the rest; both must land on the exact value.
    for (long a : {2L, 3L, 5L, 6L, 7L, 10L}) {
        auto sum = rank1_inclusion_exclusion(Int(a), 10000);
        double err = std::abs(sum.value.convert_to<double>() - exact_total(a));
        INFO("generator ", a);
        CHECK(err <= sum.tail_bound);
        CHECK(err < 5e-7);
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(rank1_inclusion_exclusion(Int(4), 100), invalid_input_error);
    CHECK_THROWS_AS(rank1_inclusion_exclusion(Int(12), 100), invalid_input_error);
    CHECK_THROWS_AS(rank1_inclusion_exclusion(Int(1), 100), invalid_input_error);
    CHECK_THROWS_AS(rank1_inclusion_exclusion(Int(-2), 100), invalid_input_error);
    CHECK_THROWS_AS(rank1_inclusion_exclusion(Int(2), 0), invalid_input_error);
    // The truncation cap is a resource ceiling, not a malformed input.
    CHECK_THROWS_AS(rank1_inclusion_exclusion(Int(2), 20000000), budget_error);
}
