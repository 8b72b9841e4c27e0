#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "test_util.hpp"
#include "troph/errors.hpp"
#include "troph/measure.hpp"

using namespace troph;

namespace {

RationalSimplex seg(const Rat& a, const Rat& b) {
    return RationalSimplex::create({{a}, {b}});
}

Lattice zl(const Rat& ell) { return Lattice::create(Mat::from_rows({{ell}})); }

AffineMap identity1() { return {Mat::from_rows({{Rat(1)}}), {Rat(0)}}; }

struct Lcg {
    std::uint64_t s;
    std::uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    }
    Rat rat(long span, long den_cap) {
        long den = 1 + static_cast<long>(next() % den_cap);
        return Rat(static_cast<long>(next() % (2 * span)) - span, den);
    }
};

}  // namespace

TEST_CASE("stratum coefficients from the factorial-degree-ratio formula") {
    // d=1, e=0, degree 2, identical span lattices
    StratumDatum s0{"s0", 0, seg(Rat(0), Rat(1)), 2, zl(Rat(1)), zl(Rat(1)), identity1(), true};
    CHECK(gubler_coefficient(1, s0) == Rat(2));

    // d=2, e=1, degree 3, covolume ratio 1/3
    StratumDatum s1{"s1", 1, seg(Rat(0), Rat(1)), 3, zl(Rat(1)), zl(Rat(3)), identity1(), true};
    CHECK(gubler_coefficient(2, s1) == Rat(2));

    // d=1, e=1: point stratum, factorial base case 0! = 1
    StratumDatum s2{"s2",          1, RationalSimplex::create({{Rat(0)}}), 1, zl(Rat(1)),
                    zl(Rat(1)),    identity1(), true};
    CHECK(gubler_coefficient(1, s2) == Rat(1));
}

TEST_CASE("coefficient scales exactly with the covolume ratio") {
    for (long k = 1; k <= 6; ++k) {
        StratumDatum s{"s", 0, seg(Rat(0), Rat(1)), 2, zl(Rat(k)), zl(Rat(1)), identity1(), true};
        CHECK(gubler_coefficient(1, s) == Rat(2 * k));
        StratumDatum t{"t", 0, seg(Rat(0), Rat(1)), 2, zl(Rat(1)), zl(Rat(k)), identity1(), true};
        CHECK(gubler_coefficient(1, t) == Rat(2, k));
    }
}

TEST_CASE("degenerate strata are rejected by the coefficient and skipped by assembly") {
    StratumDatum dead{"dead", 0, seg(Rat(0), Rat(1)), 2, zl(Rat(1)), zl(Rat(1)), identity1(), false};
    CHECK(troph_test::throws_code(ErrorCode::DegenerateStratum,
                                  [&] { gubler_coefficient(1, dead); }));
    StrataBundle bundle{1, 1, 0, zl(Rat(1)), {dead}};
    CHECK(assemble_measure(bundle).terms.empty());
}

TEST_CASE("out-of-range stratum dimension is rejected") {
    StratumDatum s{"s", 2, seg(Rat(0), Rat(1)), 1, zl(Rat(1)), zl(Rat(1)), identity1(), true};
    CHECK(troph_test::throws_code(ErrorCode::DimensionMismatch, [&] { gubler_coefficient(1, s); }));
}

TEST_CASE("empty strata list assembles to the zero measure") {
    StrataBundle bundle{1, 1, 0, zl(Rat(1)), {}};
    SimplicialMeasure mu = assemble_measure(bundle);
    CHECK(mu.terms.empty());
    CHECK(total_mass(mu) == Rat(0));
    CHECK(mass_check(bundle, mu).ok);
}

TEST_CASE("circle-of-circumference-five bundle carries mass two") {
    // one stratum: d=1, e=0, degree 2, span lattice Z against period lattice 5Z
    StratumDatum s{"tate", 0, seg(Rat(0), Rat(5)), 2, zl(Rat(1)), zl(Rat(5)), identity1(), true};
    StrataBundle bundle{1, 1, 2, zl(Rat(5)), {s}};
    SimplicialMeasure mu = assemble_measure(bundle);
    REQUIRE(mu.terms.size() == 1);
    CHECK(mu.terms[0].coeff == Rat(2, 5));
    CHECK(total_mass(mu) == Rat(2));

    SimplicialMeasure pushed = pushforward_measure(bundle, mu);
    CHECK(total_mass(pushed) == Rat(2));
    CHECK(pushed.terms[0].coeff == Rat(2, 5));

    MassReport report = mass_check(bundle, pushed);
    CHECK(report.ok);
    CHECK(report.actual == Rat(2));
    CHECK(report.expected == Rat(2));
}

TEST_CASE("corrupted degree fails the mass gate with the exact discrepancy") {
    StratumDatum s{"tate", 0, seg(Rat(0), Rat(5)), 3, zl(Rat(1)), zl(Rat(5)), identity1(), true};
    StrataBundle bundle{1, 1, 2, zl(Rat(5)), {s}};
    MassReport report = mass_check(bundle, assemble_measure(bundle));
    CHECK_FALSE(report.ok);
    CHECK(report.actual == Rat(3));
    CHECK(report.expected == Rat(2));
}

TEST_CASE("assembly is additive over concatenated strata lists") {
    StratumDatum a{"a", 0, seg(Rat(0), Rat(1)), 2, zl(Rat(1)), zl(Rat(1)), identity1(), true};
    StratumDatum b{"b", 0, seg(Rat(1), Rat(3)), 1, zl(Rat(1)), zl(Rat(2)), identity1(), true};
    StrataBundle both{1, 1, 3, zl(Rat(3)), {a, b}};
    StrataBundle justA{1, 1, 2, zl(Rat(3)), {a}};
    StrataBundle justB{1, 1, 1, zl(Rat(3)), {b}};
    CHECK(total_mass(assemble_measure(both)) ==
          total_mass(assemble_measure(justA)) + total_mass(assemble_measure(justB)));
}

TEST_CASE("pushforward by a stretch halves the density and applies the mapping degree") {
    StratumDatum s{"s", 0, seg(Rat(0), Rat(1)), 1,
                   zl(Rat(1)), zl(Rat(1)), {Mat::from_rows({{Rat(2)}}), {Rat(0)}}, true};
    StrataBundle bundle{1, 3, 3, zl(Rat(2)), {s}};
    SimplicialMeasure mu = assemble_measure(bundle);
    CHECK(mu.terms[0].coeff == Rat(1));
    SimplicialMeasure pushed = pushforward_measure(bundle, mu);
    REQUIRE(pushed.terms.size() == 1);
    CHECK(pushed.terms[0].simplex == seg(Rat(0), Rat(2)));
    CHECK(pushed.terms[0].coeff == Rat(3, 2));  // density 1/2, mapping degree 3
    CHECK(total_mass(pushed) == Rat(3) * total_mass(mu));
}

TEST_CASE("pushforward into a bigger torus uses the bundle's ambient lattice") {
    Lattice z2 = Lattice::create(Mat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));
    AffineMap embed{Mat::from_rows({{Rat(3)}, {Rat(4)}}), {Rat(0), Rat(0)}};
    StratumDatum s{"s", 0, seg(Rat(0), Rat(1)), 1, zl(Rat(1)), zl(Rat(1)), embed, true};
    StrataBundle bundle{1, 1, 1, z2, {s}};
    // the stratum simplex lives in source coordinates; assembly happens there
    StrataBundle source_bundle = bundle;
    source_bundle.torus = zl(Rat(1));
    SimplicialMeasure mu = assemble_measure(source_bundle);
    SimplicialMeasure pushed = pushforward_measure(bundle, mu);
    REQUIRE(pushed.terms.size() == 1);
    CHECK(pushed.terms[0].simplex ==
          RationalSimplex::create({{Rat(0), Rat(0)}, {Rat(3), Rat(4)}}));
    CHECK(total_mass(pushed) == Rat(1));
}

TEST_CASE("mass is conserved through random affine pushforwards") {
    Lcg rng{616};
    for (int trial = 0; trial < 20; ++trial) {
        Rat a = rng.rat(6, 4);
        Rat b = a + Rat(1) + rng.rat(3, 2).abs();
        long scale_num = 1 + static_cast<long>(rng.next() % 5);
        AffineMap map{Mat::from_rows({{Rat(scale_num, 1 + static_cast<long>(rng.next() % 3))}}),
                      {rng.rat(4, 3)}};
        long deg = 1 + static_cast<long>(rng.next() % 4);
        StratumDatum s{"r", 0, seg(a, b), 2, zl(Rat(1)), zl(Rat(1)), map, true};
        StrataBundle bundle{1, deg, 0, zl(Rat(1)), {s}};
        SimplicialMeasure mu = assemble_measure(bundle);
        CHECK(total_mass(pushforward_measure(bundle, mu)) == Rat(deg) * total_mass(mu));
    }
}

TEST_CASE("measure terms must match the live strata one for one") {
    StratumDatum s{"s", 0, seg(Rat(0), Rat(1)), 2, zl(Rat(1)), zl(Rat(1)), identity1(), true};
    StrataBundle bundle{1, 1, 2, zl(Rat(1)), {s}};
    SimplicialMeasure wrong{zl(Rat(1)), {}};
    CHECK(troph_test::throws_code(ErrorCode::ValidationFailed,
                                  [&] { pushforward_measure(bundle, wrong); }));
}
