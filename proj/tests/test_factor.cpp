#include "doctest.h"

#include "rootdens/errors.hpp"
#include "rootdens/factor.hpp"

using namespace rootdens;

TEST_CASE("rational helpers") {
    CHECK(make_rational(Int(4), Int(-6)) == Rat(-2, 3));
    CHECK(rational_string(Rat(20, 19)) == "20/19");
    CHECK(rational_string(Rat(5)) == "5/1");
    CHECK(rational_string(Rat(-2, 3)) == "-2/3");

    CHECK(parse_rational("20/19") == Rat(20, 19));
    CHECK(parse_rational("-3") == Rat(-3));
    CHECK(parse_rational("+7/2") == Rat(7, 2));
    CHECK(parse_rational("4/-6") == Rat(-2, 3));
    CHECK_THROWS_AS(parse_rational(""), invalid_input_error);
    CHECK_THROWS_AS(parse_rational("1/0"), invalid_input_error);
    CHECK_THROWS_AS(parse_rational("abc"), invalid_input_error);
    CHECK_THROWS_AS(parse_rational("1.5"), invalid_input_error);
    CHECK_THROWS_AS(parse_rational("2/"), invalid_input_error);

    CHECK(int_pow(Int(3), 0) == 1);
    CHECK(int_pow(Int(3), 5) == 243);
    CHECK(mod_floor(Int(-7), Int(5)) == 3);
    CHECK(mod_floor(Int(12), Int(5)) == 2);

    CHECK(to_long_checked(Int(123), "x") == 123);
    Int huge = int_pow(Int(2), 80);
    CHECK_THROWS_AS(to_long_checked(huge, "x"), budget_error);
}

TEST_CASE("factoring rationals") {
    Factorization f = factor_rational(Rat(360, 7));
    CHECK(f.sign == 1);
    CHECK(f.exponents == std::map<Int, long>{{2, 3}, {3, 2}, {5, 1}, {7, -1}});
    CHECK(f.value() == Rat(360, 7));

    Factorization g = factor_rational(Rat(-98, 5));
    CHECK(g.sign == -1);
    CHECK(g.exponents == std::map<Int, long>{{2, 1}, {5, -1}, {7, 2}});
    CHECK(g.value() == Rat(-98, 5));

    CHECK(factor_rational(Rat(1)).exponents.empty());
    CHECK(factor_rational(Rat(-1)).sign == -1);
    CHECK_THROWS_AS(factor_rational(Rat(0)), invalid_input_error);
}

TEST_CASE("square detection and squarefree kernels") {
    CHECK(factor_rational(Rat(36, 25)).is_square());
    CHECK_FALSE(factor_rational(Rat(-36)).is_square());
    CHECK_FALSE(factor_rational(Rat(12)).is_square());
    CHECK(factor_rational(Rat(1)).is_square());

    CHECK(factor_integer(Int(-12)).squarefree_kernel() == -3);
    CHECK(factor_integer(Int(600)).squarefree_kernel() == 6);
    CHECK(factor_integer(Int(1)).squarefree_kernel() == 1);
    CHECK(factor_rational(Rat(5, 8)).squarefree_kernel() == 10);
}

TEST_CASE("certified completion past the trial-division bound") {
    // A prime square whose root lies within the certification range.
    Factorization f = factor_integer(Int(1009) * 1009, 100);
    CHECK(f.exponents == std::map<Int, long>{{1009, 2}});

    // A prime within bound^2 is accepted, one beyond it is refused.
    CHECK(factor_integer(Int(1000003), 1100).exponents ==
          std::map<Int, long>{{1000003, 1}});
    CHECK_THROWS_AS(factor_integer(Int(1000003) * 1000033, 1000), budget_error);
}
