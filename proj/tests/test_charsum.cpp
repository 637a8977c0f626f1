#include "doctest.h"

#include "rootdens/charsum.hpp"
#include "rootdens/errors.hpp"

using namespace rootdens;

TEST_CASE("character sum contract") {
    SquareClass one = square_class_of(Rat(1));
    SquareClass three = square_class_of(Rat(3));
    SquareClass two = square_class_of(Rat(2));
    std::map<Int, OddLocal> locals{{Int(3), OddLocal{Int(1), Int(6)}}};

    // The identity class alone gives the main term.
    CHECK(character_sum({one}, {Rat(1)}, {}) == 1);

    // Even classes contribute nothing.
    CHECK(character_sum({one, two}, {Rat(1), Rat(-1)}, {}) == 1);

    // An odd-discriminant class contributes weight * (-k/(deg-k)).
    CHECK(character_sum({one, three}, {Rat(1), Rat(-1)}, locals) == Rat(6, 5));

    // Flipping the representative leaves the value unchanged: the weight is
    // attached at the odd-discriminant member of the pair.
    SquareClass minus_three = square_class_of(Rat(-3));
    CHECK(character_sum({one, minus_three}, {Rat(1), Rat(-1)}, locals) == Rat(6, 5));

    // The identity must carry weight +1 ...
    CHECK_THROWS_AS(character_sum({one}, {Rat(-1)}, {}), std::logic_error);
    // ... and a doubled key must carry one weight.
    CHECK_THROWS_AS(
        character_sum({one, three, minus_three}, {Rat(1), Rat(1), Rat(-1)}, locals),
        std::logic_error);
    // Equal-weight duplicates collapse into a single pair term.
    CHECK(character_sum({one, three, minus_three}, {Rat(1), Rat(-1), Rat(-1)},
                        locals) == Rat(6, 5));
}

TEST_CASE("surjectivity corrections") {
    auto E = [](std::vector<Rat> gens) {
        return entanglement_rank_r(ExponentLattice::from_generators(gens));
    };
    CHECK(E({Rat(5)}) == Rat(20, 19));
    CHECK(E({Rat(2), Rat(5)}) == Rat(298, 297));
    CHECK(E({Rat(2), Rat(3)}) == 1);
    CHECK(E({Rat(2)}) == 1);
    CHECK(E({Rat(-27)}) == 2);

    // Factored evaluation agrees.
    for (auto gens : {std::vector<Rat>{Rat(5)}, {Rat(2), Rat(5)}, {Rat(-3), Rat(7)},
                      {Rat(-10, 9), Rat(15)}}) {
        ExponentLattice L = ExponentLattice::from_generators(gens);
        CHECK(entanglement_rank_r(L) == entanglement_rank_r_factored(L));
    }
}

TEST_CASE("simultaneous corrections") {
    ExponentLattice L = ExponentLattice::from_generators({Rat(3), Rat(5)});
    CHECK(entanglement_multi(L, {0, 1}) == Rat(100, 91));
    CHECK(multi_closed_form({Int(3), Int(5)}) == Rat(100, 91));

    ExponentLattice M = ExponentLattice::from_generators({Rat(5), Rat(13)});
    Rat expected = (1 + Rat(9, 91)) * (1 + Rat(25, 2003));
    CHECK(entanglement_multi(M, {0, 1}) == expected);
    CHECK(multi_closed_form({Int(5), Int(13)}) == expected);
    CHECK(expected == Rat(15600, 14021));

    ExponentLattice single = ExponentLattice::from_generators({Rat(-3)});
    CHECK(entanglement_multi(single, {0}) == Rat(6, 5));

    CHECK_THROWS_AS(multi_closed_form({Int(2)}), invalid_input_error);
    CHECK_THROWS_AS(multi_closed_form({Int(9)}), invalid_input_error);
    CHECK_THROWS_AS(multi_closed_form({Int(3), Int(3)}), invalid_input_error);
}

TEST_CASE("mixed corrections") {
    // Engine and closed form across small instances, including empty parts.
    for (auto& [a, b] : std::vector<std::pair<std::vector<Int>, std::vector<Int>>>{
             {{Int(5)}, {Int(13)}},
             {{Int(3)}, {Int(5)}},
             {{Int(3), Int(7)}, {Int(5)}},
             {{}, {Int(13)}},
             {{Int(5)}, {}},
             {{}, {}}}) {
        std::vector<Rat> gens;
        std::vector<long> marked;
        for (const Int& p : a) {
            marked.push_back(static_cast<long>(gens.size()));
            gens.emplace_back(p);
        }
        std::vector<long> plus_one;
        for (const Int& p : b) {
            plus_one.push_back(static_cast<long>(gens.size()));
            gens.emplace_back(p);
        }
        plus_one.push_back(static_cast<long>(gens.size()));
        gens.emplace_back(2);
        ExponentLattice L = ExponentLattice::from_generators(gens);
        CHECK(entanglement_schinzel(L, marked, plus_one) == schinzel_closed_form(a, b));
    }

    CHECK(schinzel_closed_form({Int(5)}, {Int(13)}) == Rat(616, 589));
    CHECK(schinzel_closed_form({Int(5)}, {Int(13)}) == Rat(20, 19) * Rat(154, 155));
    CHECK(schinzel_closed_form({}, {}) == 1);
    CHECK(schinzel_closed_form({}, {Int(13)}) == 1);

    CHECK_THROWS_AS(schinzel_closed_form({Int(5)}, {Int(5)}), invalid_input_error);
    CHECK_THROWS_AS(schinzel_closed_form({Int(4)}, {}), invalid_input_error);
}

TEST_CASE("local data") {
    ExponentLattice L = ExponentLattice::from_generators({Rat(3), Rat(5)});
    auto locals = odd_local_data(L, {0, 1});
    REQUIRE(locals.count(Int(3)) == 1);
    REQUIRE(locals.count(Int(5)) == 1);
    CHECK(locals.at(Int(3)).k == 5);
    CHECK(locals.at(Int(3)).deg == 18);
    CHECK(locals.at(Int(5)).k == 9);
    CHECK(locals.at(Int(5)).deg == 100);

    ExponentLattice five = ExponentLattice::from_generators({Rat(5)});
    auto units = unit_local_data(five);
    REQUIRE(units.count(Int(5)) == 1);
    CHECK(units.at(Int(5)).k == 1);
    CHECK(units.at(Int(5)).deg == 20);
}
