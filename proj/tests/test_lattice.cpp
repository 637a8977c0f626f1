#include "doctest.h"

#include "rootdens/errors.hpp"
#include "rootdens/lattice.hpp"

using namespace rootdens;

TEST_CASE("exponent lattice construction") {
    ExponentLattice L = ExponentLattice::from_generators({Rat(2), Rat(3), Rat(6)});
    CHECK(L.num_generators() == 3);
    CHECK(L.support == std::vector<Int>{2, 3});
    CHECK(L.free_rank == 2);

    ExponentLattice single = ExponentLattice::from_generators({Rat(-10, 9)});
    CHECK(single.support == std::vector<Int>{2, 3, 5});
    CHECK(single.free_rank == 1);
    CHECK(single.signs == std::vector<int>{-1});

    CHECK(ExponentLattice::from_generators({Rat(8)}).elementary_divisors() ==
          std::vector<Int>{3});

    // Torsion-only input still builds (free rank zero).
    CHECK(ExponentLattice::from_generators({Rat(-1)}).free_rank == 0);
    CHECK_THROWS_AS(ExponentLattice::from_generators({Rat(0)}), invalid_input_error);
}

TEST_CASE("subset ranks") {
    ExponentLattice L = ExponentLattice::from_generators({Rat(2), Rat(3), Rat(6)});
    CHECK(L.subset_rank({0}) == 1);
    CHECK(L.subset_rank({0, 1}) == 2);
    CHECK(L.subset_rank({0, 1, 2}) == 2);
    CHECK(L.subset_rank({}) == 0);
}

TEST_CASE("images modulo p-th powers") {
    ExponentLattice L = ExponentLattice::from_generators({Rat(3), Rat(5)});
    ModPImage at3 = mod_p_image(L, Int(3));
    CHECK(at3.rank == 2);
    ModPImage at5 = mod_p_image(L, Int(5));
    CHECK(at5.rank == 2);

    // A cube collapses modulo 3.
    ExponentLattice cube = ExponentLattice::from_generators({Rat(8)});
    CHECK(mod_p_image(cube, Int(3)).rank == 0);
    CHECK(mod_p_image(cube, Int(2)).rank == 1);

    // coords_of recovers membership.
    Factorization f = factor_rational(Rat(15));
    auto coords = at3.coords_of(f);
    REQUIRE(coords.has_value());
    Factorization g = factor_rational(Rat(7));
    CHECK_FALSE(mod_p_image(L, Int(3)).coords_of(g).has_value());
}

TEST_CASE("field degrees") {
    ExponentLattice five = ExponentLattice::from_generators({Rat(5)});
    CHECK(field_degree(five, Int(5)) == 20);
    CHECK(field_degree(five, Int(3)) == 6);

    ExponentLattice both = ExponentLattice::from_generators({Rat(3), Rat(5)});
    CHECK(field_degree(both, Int(3)) == 18);
    CHECK(field_degree(both, Int(5)) == 100);
    CHECK(field_degree(both, Int(7)) == 294);
}

TEST_CASE("square classes and critical primes") {
    ExponentLattice L = ExponentLattice::from_generators({Rat(3), Rat(5)});
    std::vector<SquareClass> classes = square_classes(L);
    REQUIRE(classes.size() == 4);
    CHECK(classes[0].is_identity());
    CHECK(critical_primes(L) == std::vector<Int>{2, 3, 5});

    // Squares contribute nothing.
    ExponentLattice sq = ExponentLattice::from_generators({Rat(4), Rat(9)});
    CHECK(square_classes(sq).size() == 1);
    CHECK(critical_primes(sq) == std::vector<Int>{2});

    ExponentLattice eight = ExponentLattice::from_generators({Rat(8)});
    auto cl = square_classes(eight);
    REQUIRE(cl.size() == 2);
    CHECK(cl[1].rep() == 2);
    CHECK(cl[1].is_even());
    CHECK_FALSE(cl[1].has_odd_discriminant());
}

TEST_CASE("sign systems") {
    ExponentLattice L = ExponentLattice::from_generators({Rat(3), Rat(5)});
    auto classes = square_classes(L);
    auto sys = SignSystem::solve(
        {square_class_of(Rat(3)), square_class_of(Rat(5))}, {-1, -1});
    REQUIRE(sys.has_value());
    CHECK(sys->evaluate(square_class_of(Rat(15))) == 1);
    CHECK(sys->evaluate(square_class_of(Rat(3))) == -1);
    CHECK_FALSE(sys->evaluate(square_class_of(Rat(7))).has_value());

    // 4 is a square: forcing its class negative is impossible.
    auto bad = SignSystem::solve({square_class_of(Rat(4))}, {-1});
    CHECK_FALSE(bad.has_value());
    // ... while forcing it positive is vacuous.
    auto good = SignSystem::solve({square_class_of(Rat(4))}, {1});
    CHECK(good.has_value());
}

TEST_CASE("kill counts by inclusion-exclusion") {
    ExponentLattice L = ExponentLattice::from_generators({Rat(3), Rat(5)});
    CHECK(k_at_p(L, {0, 1}, Int(3)) == 5);
    CHECK(k_at_p(L, {0, 1}, Int(5)) == 9);
    CHECK(k_at_p(L, {0}, Int(3)) == 3);
    CHECK(k_at_p(L, {}, Int(3)) == 0);

    ExponentLattice M = ExponentLattice::from_generators({Rat(2), Rat(3)});
    CHECK(k_at_p(M, {0, 1}, Int(3)) == 5);
}
