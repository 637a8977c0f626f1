#include "doctest.h"

#include "rootdens/constants.hpp"
#include "rootdens/errors.hpp"

using namespace rootdens;

TEST_CASE("bernoulli numbers") {
    auto b = bernoulli_numbers(12);
    CHECK(b[0] == 1);
    CHECK(b[1] == Rat(-1, 2));
    CHECK(b[2] == Rat(1, 6));
    CHECK(b[3] == 0);
    CHECK(b[12] == Rat(-691, 2730));
}

TEST_CASE("zeta and prime zeta values") {
    PrecisionGuard guard(40);
    Real two = zeta(Real(2), 30);
    CHECK(abs(two - Real("1.64493406684822643647241516665")) < Real("1e-28"));
    Real three = zeta(Real(3), 30);
    CHECK(abs(three - Real("1.20205690315959428539973816151")) < Real("1e-28"));

    Real p2 = prime_zeta(2, 30);
    CHECK(abs(p2 - Real("0.45224742004106549850654336483")) < Real("1e-27"));
    Real p3 = prime_zeta(3, 30);
    CHECK(abs(p3 - Real("0.17476263929944353642311331466")) < Real("1e-27"));

    // P(k) restricted to p > limit drops exactly the small-prime terms.
    Real tail = prime_zeta_tail(2, 5, 30);
    Real small = Real(1) / 4 + Real(1) / 9 + Real(1) / 25;
    CHECK(abs(p2 - small - tail) < Real("1e-27"));
}

TEST_CASE("euler products and the reference table") {
    auto c1 = surjectivity_constant(1, 20);
    PrecisionGuard guard(30);
    CHECK(format_real(c1.value, 20) == "0.37395581361920228805");
    CHECK(c1.error_bound < Real("1e-20"));

    auto d1 = simultaneous_constant(1, 20);
    CHECK(abs(c1.value - d1.value) <= c1.error_bound + d1.error_bound);

    auto checks = check_reference_table();
    REQUIRE(checks.size() == 14);
    for (const auto& c : checks) {
        INFO(c.name, " expected ", c.expected, " computed ", c.computed);
        CHECK(c.ok);
    }

    CHECK_THROWS_AS(surjectivity_constant(1, 0), invalid_input_error);
    CHECK_THROWS_AS(surjectivity_constant(0, 20), invalid_input_error);
}

TEST_CASE("slow direct product agrees") {
    EulerFamily c2 = EulerFamily::surjectivity(2);
    auto fast = surjectivity_constant(2, 20);
    auto slow = direct_product_crosscheck(c2, 100000, 8);
    PrecisionGuard guard(30);
    CHECK(abs(fast.value - slow.value) <= fast.error_bound + slow.error_bound);
    CHECK(slow.error_bound < Real("1e-8"));
}

TEST_CASE("formatting") {
    PrecisionGuard guard(30);
    CHECK(format_real(Real("0.5"), 3) == "0.500");
    CHECK(format_real(Real("0.123456"), 4) == "0.1235");
    CHECK(to_real(Rat(1, 4)) == Real("0.25"));
}

TEST_CASE("families") {
    EulerFamily c1 = EulerFamily::surjectivity(1);
    CHECK(c1.name == "C_1");
    CHECK(c1.local_factor(Int(3)) == Rat(5, 6)); // 1 - 1/(3*2)
    CHECK(c1.local_factor(Int(5)) == Rat(19, 20));

    EulerFamily d2 = EulerFamily::simultaneous(2);
    CHECK(d2.name == "D_2");
    CHECK(d2.q_at(Rat(1, 2)) == Rat(3, 4)); // 1 - (1-x)^2 at x = 1/2

    EulerFamily named = EulerFamily::from_q({Int(0), Int(0), Int(1)});
    CHECK(named.name == "C_2");
    EulerFamily generic = EulerFamily::from_q({Int(0), Int(3), Int(-2)});
    CHECK(generic.name == "F[0,3,-2]");
    EulerFamily zero = EulerFamily::from_q({});
    CHECK(zero.name == "D_0");
}
