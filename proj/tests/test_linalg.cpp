#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "troph/errors.hpp"
#include "troph/linalg.hpp"

using namespace troph;

namespace {

Mat random_mat(std::mt19937& rng, std::size_t n, int lo = -6, int hi = 6) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 4);
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Rat(num(rng), den(rng));
    return m;
}

}

TEST_CASE("determinant on frozen cases") {
    CHECK(det(Mat::identity(3)) == Rat(1));
    Mat m = Mat::from_rows({{Rat(1), Rat(2)}, {Rat(3), Rat(4)}});
    CHECK(det(m) == Rat(-2));
    Mat frac = Mat::from_rows({{Rat(1, 2), Rat(1, 3)}, {Rat(1, 4), Rat(1, 5)}});
    CHECK(det(frac) == Rat(1, 10) - Rat(1, 12));
    Mat singular = Mat::from_rows({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}});
    CHECK(det(singular) == Rat(0));
}

TEST_CASE("determinant is multiplicative") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        Mat a = random_mat(rng, 3);
        Mat b = random_mat(rng, 3);
        CHECK(det(mat_mul(a, b)) == det(a) * det(b));
    }
}

TEST_CASE("solve_square recovers known solutions") {
    Mat a = Mat::from_rows({{Rat(2), Rat(1)}, {Rat(1), Rat(3)}});
    RatVec rhs = {Rat(5), Rat(10)};
    auto x = solve_square(a, rhs);
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rat(1));
    CHECK((*x)[1] == Rat(3));

    Mat singular = Mat::from_rows({{Rat(1), Rat(1)}, {Rat(2), Rat(2)}});
    CHECK(!solve_square(singular, rhs).has_value());
}

TEST_CASE("solve_square round-trips random systems") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + trial % 5;
        Mat a = random_mat(rng, n);
        if (det(a).is_zero()) continue;
        RatVec want(n);
        for (auto& v : want) v = Rat(num(rng), 3);
        RatVec rhs = mat_apply(a, want);
        auto got = solve_square(a, rhs);
        REQUIRE(got.has_value());
        CHECK(*got == want);
    }
}

TEST_CASE("rank and inverse") {
    Mat m = Mat::from_rows({{Rat(1), Rat(2), Rat(3)},
                            {Rat(2), Rat(4), Rat(6)},
                            {Rat(0), Rat(1), Rat(1)}});
    CHECK(rank(m) == 2);
    CHECK(rank(Mat::identity(4)) == 4);

    Mat a = Mat::from_rows({{Rat(2), Rat(1)}, {Rat(1), Rat(1)}});
    Mat inv = mat_inverse(a);
    CHECK(mat_mul(a, inv) == Mat::identity(2));
    CHECK(mat_mul(inv, a) == Mat::identity(2));
}

TEST_CASE("solve_any handles rectangular systems") {
    // overdetermined consistent: x = 2, y = -1
    Mat a = Mat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}});
    auto x = solve_any(a, {Rat(2), Rat(-1), Rat(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rat(2));
    CHECK((*x)[1] == Rat(-1));

    // inconsistent
    CHECK(!solve_any(a, {Rat(2), Rat(-1), Rat(5)}).has_value());

    // underdetermined: any solution must satisfy the system
    Mat u = Mat::from_rows({{Rat(1), Rat(1), Rat(1)}});
    auto y = solve_any(u, {Rat(6)});
    REQUIRE(y.has_value());
    CHECK(dot(u.row(0), *y) == Rat(6));
}

TEST_CASE("saturation basis spans the saturated sublattice") {
    // span of (2,4) saturates to Z*(1,2)
    Mat w = Mat::from_rows({{Rat(2), Rat(4)}});
    Mat s = saturation_basis(w);
    REQUIRE(s.rows == 1);
    CHECK((s.row(0) == RatVec{Rat(1), Rat(2)} || s.row(0) == RatVec{Rat(-1), Rat(-2)}));

    // full-rank integer matrix with index 6 sublattice: saturation is Z^2
    Mat f = Mat::from_rows({{Rat(2), Rat(0)}, {Rat(0), Rat(3)}});
    Mat sf = saturation_basis(f);
    CHECK(det(sf).abs() == Rat(1));

    // rational spans are saturated from their integer scaling
    Mat r = Mat::from_rows({{Rat(1, 2), Rat(3, 2)}});
    Mat sr = saturation_basis(r);
    REQUIRE(sr.rows == 1);
    CHECK((sr.row(0) == RatVec{Rat(1), Rat(3)} || sr.row(0) == RatVec{Rat(-1), Rat(-3)}));
}

TEST_CASE("saturation basis entries are integral and primitive") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> num(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + trial % 3;
        std::size_t d = 1 + trial % n;
        Mat w(d, n);
        for (auto& v : w.a) v = Rat(num(rng), 1 + (trial % 2));
        if (rank(w) != d) continue;
        Mat s = saturation_basis(w);
        REQUIRE(s.rows == d);
        for (const auto& v : s.a) CHECK(v.is_integer());
        // same rational row span
        Mat stacked(d + s.rows, n);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < n; ++j) stacked.at(i, j) = w.at(i, j);
        for (std::size_t i = 0; i < s.rows; ++i)
            for (std::size_t j = 0; j < n; ++j) stacked.at(d + i, j) = s.at(i, j);
        CHECK(rank(stacked) == d);
    }
}
