#include "doctest.h"

#include "rootdens/snf.hpp"

using namespace rootdens;

namespace {

MatZ from_rows(std::vector<std::vector<long>> rows) {
    MatZ m(static_cast<long>(rows.size()),
           rows.empty() ? 0 : static_cast<long>(rows[0].size()));
    for (long r = 0; r < m.rows; ++r)
        for (long c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
    return m;
}

} // namespace

TEST_CASE("matrix basics") {
    MatZ i3 = identity_matrix(3);
    MatZ a = from_rows({{1, 2, 0}, {0, 1, 4}, {5, 0, 1}});
    CHECK(mat_mul(i3, a) == a);
    CHECK(mat_mul(a, i3) == a);
    CHECK(determinant(a) == 41);
    CHECK(determinant(from_rows({{2, 1}, {1, 2}})) == 3);
    CHECK(rational_rank(a) == 3);
    CHECK(rational_rank(from_rows({{1, 2}, {2, 4}, {3, 6}})) == 1);
    CHECK(rational_rank(from_rows({{0, 0}, {0, 0}})) == 0);
}

TEST_CASE("smith normal form with transforms") {
    MatZ a = from_rows({{2, 4}, {6, 8}});
    SmithForm s = smith_normal_form(a);
    CHECK(s.divisors == std::vector<Int>{2, 4});
    CHECK(s.rank() == 2);
    CHECK(mat_mul(mat_mul(s.L, a), s.R) == s.D);
    CHECK(determinant(s.L) * determinant(s.L) == 1);
    CHECK(determinant(s.R) * determinant(s.R) == 1);

    // Entries divide their successors even with awkward input.
    MatZ b = from_rows({{6, 10, 15}, {10, 6, 0}, {0, 0, 30}});
    SmithForm t = smith_normal_form(b);
    REQUIRE(t.rank() == 3);
    CHECK(t.divisors[0] == 1);
    CHECK(t.divisors[1] % t.divisors[0] == 0);
    CHECK(t.divisors[2] % t.divisors[1] == 0);
    CHECK(mat_mul(mat_mul(t.L, b), t.R) == t.D);

    // Wide rank-one matrix.
    MatZ c = from_rows({{6, 10, 15}});
    SmithForm u = smith_normal_form(c);
    CHECK(u.divisors == std::vector<Int>{1});
    CHECK(mat_mul(mat_mul(u.L, c), u.R) == u.D);
}
