#include "doctest.h"
#include "opcat/matrix.hpp"

using namespace opcat;

namespace {

Matrix from_rows(const std::vector<std::vector<int>>& rows) {
    Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

}  // namespace

TEST_CASE("rank and kernel on small integer matrices") {
    Matrix m = from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
    CHECK(rank(m) == 2);
    CHECK(kernel_dim(m) == 1);
    auto kb = kernel_basis(m);
    REQUIRE(kb.size() == 1);
    for (const auto& v : kb) {
        auto img = m.apply(v);
        for (const auto& x : img) CHECK(x == 0);
    }
}

TEST_CASE("solve consistent and inconsistent systems") {
    Matrix a = from_rows({{1, 1}, {0, 1}});
    RatVec x;
    REQUIRE(solve(a, {Rat(3), Rat(1)}, x));
    CHECK(x[0] == 2);
    CHECK(x[1] == 1);
    Matrix b = from_rows({{1, 1}, {2, 2}});
    CHECK_FALSE(solve(b, {Rat(0), Rat(1)}, x));
}

TEST_CASE("row span and quotient") {
    RowSpan s(3);
    CHECK(s.add({Rat(1), Rat(0), Rat(1)}));
    CHECK(s.add({Rat(0), Rat(1), Rat(1)}));
    CHECK_FALSE(s.add({Rat(1), Rat(1), Rat(2)}));
    CHECK(s.dim() == 2);
    CHECK(s.contains({Rat(2), Rat(-1), Rat(1)}));
    CHECK_FALSE(s.contains({Rat(0), Rat(0), Rat(1)}));

    auto q = make_quotient(s);
    REQUIRE(q.keep.size() == 1);
    // proj kills the span
    for (const auto& row : s.rows) {
        auto img = q.proj.apply(row);
        for (const auto& v : img) CHECK(v == 0);
    }
    // proj ∘ sect = id
    Matrix ps = q.proj * q.sect;
    CHECK(ps == Matrix::identity(1));
}

TEST_CASE("exact rational arithmetic has no drift") {
    Rat third = rat_parse("1/3");
    Rat sum = third + third + third;
    CHECK(sum == 1);
    CHECK(rat_str(rat_parse("-4/6")) == "-2/3");
}
