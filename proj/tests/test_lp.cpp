#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "troph/lp.hpp"

using namespace troph;

TEST_CASE("bounded maximum on a triangle") {
    // max x + y s.t. x + y + s = 1 -> 1
    Mat A = Mat::from_rows({{Rat(1), Rat(1), Rat(1)}});
    LPResult r = lp_maximize(A, {Rat(1)}, {Rat(1), Rat(1), Rat(0)});
    CHECK(r.status == LPStatus::Optimal);
    CHECK(r.value == Rat(1));
}

TEST_CASE("objective attained at a vertex with exact rationals") {
    // max 2x + 3y s.t. x + y = 1, x,y >= 0 -> 3 at (0,1)
    Mat A = Mat::from_rows({{Rat(1), Rat(1)}});
    LPResult r = lp_maximize(A, {Rat(1)}, {Rat(2), Rat(3)});
    CHECK(r.status == LPStatus::Optimal);
    CHECK(r.value == Rat(3));
    CHECK(r.point[0] == Rat(0));
    CHECK(r.point[1] == Rat(1));
}

TEST_CASE("infeasible system detected") {
    // x + y = -1 with x,y >= 0
    Mat A = Mat::from_rows({{Rat(1), Rat(1)}});
    LPResult r = lp_maximize(A, {Rat(-1)}, {Rat(1), Rat(0)});
    CHECK(r.status == LPStatus::Infeasible);
}

TEST_CASE("unbounded direction detected") {
    // max x s.t. x - y = 0: x = y can grow forever
    Mat A = Mat::from_rows({{Rat(1), Rat(-1)}});
    LPResult r = lp_maximize(A, {Rat(0)}, {Rat(1), Rat(0)});
    CHECK(r.status == LPStatus::Unbounded);
}

TEST_CASE("redundant constraints are tolerated") {
    // duplicated row
    Mat A = Mat::from_rows({{Rat(1), Rat(1)}, {Rat(1), Rat(1)}});
    LPResult r = lp_maximize(A, {Rat(1), Rat(1)}, {Rat(1), Rat(2)});
    CHECK(r.status == LPStatus::Optimal);
    CHECK(r.value == Rat(2));
}

TEST_CASE("fractional data stays exact") {
    // max x/3 s.t. (1/2)x + (1/5)y = 7/10
    Mat A = Mat::from_rows({{Rat(1, 2), Rat(1, 5)}});
    LPResult r = lp_maximize(A, {Rat(7, 10)}, {Rat(1, 3), Rat(0)});
    CHECK(r.status == LPStatus::Optimal);
    CHECK(r.value == Rat(7, 15));  // x = 7/5
    CHECK(r.point[0] == Rat(7, 5));
}

TEST_CASE("degenerate vertices do not cycle") {
    // several constraints meeting at one point; Bland's rule must terminate
    Mat A = Mat::from_rows({{Rat(1), Rat(1), Rat(1), Rat(0)},
                            {Rat(1), Rat(2), Rat(0), Rat(1)}});
    LPResult r = lp_maximize(A, {Rat(0), Rat(0)}, {Rat(1), Rat(1), Rat(0), Rat(0)});
    CHECK(r.status == LPStatus::Optimal);
    CHECK(r.value == Rat(0));
}
