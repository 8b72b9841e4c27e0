#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "test_util.hpp"
#include "troph/doubling.hpp"
#include "troph/errors.hpp"

using namespace troph;

namespace {

RationalSimplex seg(const Rat& a, const Rat& b) {
    return RationalSimplex::create({{a}, {b}});
}

Lattice circle(const Rat& ell = Rat(1)) {
    return Lattice::create(Mat::from_rows({{ell}}));
}

// Sawtooth divisor datum on R/Z (vanishing mean over the circle).
PLFunction hat() {
    return PLFunction::create(
        circle(), {
                      {seg(Rat(0), Rat(1, 2)), {Rat(-1)}, Rat(1, 4)},
                      {seg(Rat(1, 2), Rat(1)), {Rat(1)}, Rat(-3, 4)},
                  });
}

struct Lcg {
    std::uint64_t s;
    std::uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    }
};

}  // namespace

TEST_CASE("orbit complex of a fixed point is the whole circle") {
    DoublingComplex c = build_orbit_complex({Rat(0)}, circle());
    REQUIRE(c.cells.size() == 1);
    CHECK(c.cells[0] == seg(Rat(0), Rat(1)));
    CHECK(c.provenance == DoublingComplex::Provenance::Generated);
}

TEST_CASE("empty breakpoint list also yields the whole circle") {
    DoublingComplex c = build_orbit_complex({}, circle());
    REQUIRE(c.cells.size() == 1);
    CHECK(c.cells[0] == seg(Rat(0), Rat(1)));
}

TEST_CASE("orbit complex closes the breakpoints forward only") {
    DoublingComplex halves = build_orbit_complex({Rat(0), Rat(1, 2)}, circle());
    REQUIRE(halves.cells.size() == 2);
    CHECK(halves.cells[0] == seg(Rat(0), Rat(1, 2)));
    CHECK(halves.cells[1] == seg(Rat(1, 2), Rat(1)));

    // 1/4 -> 1/2 -> 0; 3/4 is a preimage and must NOT appear
    DoublingComplex q = build_orbit_complex({Rat(0), Rat(1, 4), Rat(1, 2)}, circle());
    REQUIRE(q.cells.size() == 3);
    CHECK(q.cells[0] == seg(Rat(0), Rat(1, 4)));
    CHECK(q.cells[1] == seg(Rat(1, 4), Rat(1, 2)));
    CHECK(q.cells[2] == seg(Rat(1, 2), Rat(1)));
}

TEST_CASE("orbit complex without a breakpoint at zero wraps around") {
    DoublingComplex c = build_orbit_complex({Rat(1, 3)}, circle());
    REQUIRE(c.cells.size() == 2);
    CHECK(c.cells[0] == seg(Rat(1, 3), Rat(2, 3)));
    CHECK(c.cells[1] == seg(Rat(2, 3), Rat(4, 3)));
    CHECK(verify_doubling_stable(c).empty());
}

TEST_CASE("orbit complex respects the lattice period") {
    DoublingComplex c = build_orbit_complex({Rat(0), Rat(5, 2)}, circle(Rat(5)));
    REQUIRE(c.cells.size() == 2);
    CHECK(c.cells[0] == seg(Rat(0), Rat(5, 2)));
    CHECK(c.cells[1] == seg(Rat(5, 2), Rat(5)));
}

TEST_CASE("tiny budgets abort long orbits") {
    CHECK(troph_test::throws_code(ErrorCode::OrbitBudgetExceeded, [] {
        build_orbit_complex({Rat(1, 3145728)}, circle(), 3);  // 1/(3·2^20): 20 halvings + 2-cycle
    }));
}

TEST_CASE("stability verifier accepts partitions closed under doubling") {
    DoublingComplex halves{circle(), {seg(Rat(0), Rat(1, 2)), seg(Rat(1, 2), Rat(1))}};
    CHECK(verify_doubling_stable(halves).empty());
    DoublingComplex whole{circle(), {seg(Rat(0), Rat(1))}};
    CHECK(verify_doubling_stable(whole).empty());
}

TEST_CASE("stability verifier rejects a cell whose double straddles a boundary") {
    // 2·[0,1/3] = [0,2/3] has no cell boundary at 1/3... at 2/3 it straddles 1/3's cell wall
    DoublingComplex bad{circle(), {seg(Rat(0), Rat(1, 3)), seg(Rat(1, 3), Rat(1))}};
    CHECK_FALSE(verify_doubling_stable(bad).empty());
}

TEST_CASE("stability verifier rejects overlapping cells") {
    DoublingComplex bad{circle(), {seg(Rat(0), Rat(5, 8)), seg(Rat(1, 2), Rat(1))}};
    CHECK_FALSE(verify_doubling_stable(bad).empty());
}

TEST_CASE("transfer matrix of the two-halves complex") {
    TransferSystem sys = transfer_matrix(build_orbit_complex({Rat(0), Rat(1, 2)}, circle()));
    CHECK(sys.T == Mat::from_rows({{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2)}}));
    CHECK(sys.masses == RatVec{Rat(1, 2), Rat(1, 2)});
}

TEST_CASE("transfer matrix of the single-cell complex") {
    TransferSystem sys = transfer_matrix(build_orbit_complex({}, circle()));
    CHECK(sys.T == Mat::from_rows({{Rat(1)}}));
}

TEST_CASE("transfer matrix of the four-quarter complex") {
    DoublingComplex q{circle(),
                      {seg(Rat(0), Rat(1, 4)), seg(Rat(1, 4), Rat(1, 2)),
                       seg(Rat(1, 2), Rat(3, 4)), seg(Rat(3, 4), Rat(1))}};
    CHECK(verify_doubling_stable(q).empty());
    TransferSystem sys = transfer_matrix(q);
    CHECK(sys.T == Mat::from_rows({{Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)},
                                   {Rat(0), Rat(0), Rat(1, 2), Rat(1, 2)},
                                   {Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)},
                                   {Rat(0), Rat(0), Rat(1, 2), Rat(1, 2)}}));
}

TEST_CASE("transfer matrix of an asymmetric two-cell complex") {
    TransferSystem sys = transfer_matrix(build_orbit_complex({Rat(1, 3)}, circle()));
    // [1/3,2/3] doubles onto [2/3,4/3]; [2/3,4/3] doubles onto the full circle twice
    CHECK(sys.T == Mat::from_rows({{Rat(0), Rat(1, 2)}, {Rat(1), Rat(1, 2)}}));
}

TEST_CASE("transfer on an unstable complex throws") {
    DoublingComplex bad{circle(), {seg(Rat(0), Rat(1, 3)), seg(Rat(1, 3), Rat(1))}};
    CHECK(troph_test::throws_code(ErrorCode::UnstableComplex, [&] { transfer_matrix(bad); }));
}

TEST_CASE("row mass conservation holds on random orbit complexes") {
    Lcg rng{31337};
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Rat> breaks;
        int nb = 1 + static_cast<int>(rng.next() % 4);
        for (int i = 0; i < nb; ++i) {
            long den = 1 + static_cast<long>(rng.next() % 48);
            breaks.emplace_back(static_cast<long>(rng.next() % 97), den);
        }
        TransferSystem sys = transfer_matrix(build_orbit_complex(breaks, circle()));
        const std::size_t n = sys.complex.cells.size();
        for (std::size_t i = 0; i < n; ++i) {
            Rat row(0);
            for (std::size_t j = 0; j < n; ++j) row += sys.T.at(i, j) * sys.masses[j];
            CHECK(row == sys.masses[i]);
        }
    }
}

TEST_CASE("zero datum solves to the zero vector") {
    TransferSystem sys = transfer_matrix(build_orbit_complex({Rat(0), Rat(1, 2)}, circle()));
    PLFunction zero = PLFunction::create(
        circle(), {
                      {seg(Rat(0), Rat(1, 2)), {Rat(0)}, Rat(0)},
                      {seg(Rat(1, 2), Rat(1)), {Rat(0)}, Rat(0)},
                  });
    CHECK(solve_canonical_integrals(sys, zero) == RatVec{Rat(0), Rat(0)});
}

TEST_CASE("sawtooth datum on halves has vanishing cell integrals") {
    TransferSystem sys = transfer_matrix(build_orbit_complex({Rat(0), Rat(1, 2)}, circle()));
    CHECK(cell_integrals(hat(), sys.complex) == RatVec{Rat(0), Rat(0)});
    CHECK(solve_canonical_integrals(sys, hat()) == RatVec{Rat(0), Rat(0)});
}

TEST_CASE("sawtooth datum on the four-quarter complex") {
    DoublingComplex q{circle(),
                      {seg(Rat(0), Rat(1, 4)), seg(Rat(1, 4), Rat(1, 2)),
                       seg(Rat(1, 2), Rat(3, 4)), seg(Rat(3, 4), Rat(1))}};
    TransferSystem sys = transfer_matrix(q);
    PLFunction g = hat();
    CHECK(cell_integrals(g, q) == RatVec{Rat(1, 32), Rat(-1, 32), Rat(-1, 32), Rat(1, 32)});
    RatVec f = solve_canonical_integrals(sys, g);
    CHECK(f == RatVec{Rat(1, 128), Rat(-1, 128), Rat(-1, 128), Rat(1, 128)});
    // fixed point: 4F − TF = G
    for (std::size_t i = 0; i < 4; ++i) {
        Rat tf(0);
        for (std::size_t j = 0; j < 4; ++j) tf += sys.T.at(i, j) * f[j];
        CHECK(Rat(4) * f[i] - tf == cell_integrals(g, q)[i]);
    }
}

TEST_CASE("sawtooth datum on the generated three-cell complex") {
    TransferSystem sys =
        transfer_matrix(build_orbit_complex({Rat(0), Rat(1, 4), Rat(1, 2)}, circle()));
    RatVec f = solve_canonical_integrals(sys, hat());
    CHECK(f == RatVec{Rat(1, 128), Rat(-1, 128), Rat(0)});
}

TEST_CASE("solutions on the thirds complex match the closed form") {
    TransferSystem sys =
        transfer_matrix(build_orbit_complex({Rat(0), Rat(1, 3)}, circle()));
    // ∫ (1/2)B2 over [0,1/3], [1/3,2/3], [2/3,1]
    CHECK(solve_canonical_integrals(sys, hat()) == RatVec{Rat(1, 162), Rat(-1, 81), Rat(1, 162)});
}

TEST_CASE("refining a complex refines the solution consistently") {
    PLFunction g = hat();
    RatVec coarse = solve_canonical_integrals(
        transfer_matrix(build_orbit_complex({Rat(0), Rat(1, 2)}, circle())), g);
    RatVec fine = solve_canonical_integrals(
        transfer_matrix(build_orbit_complex({Rat(0), Rat(1, 4), Rat(1, 2)}, circle())), g);
    CHECK(coarse[0] == fine[0] + fine[1]);  // [0,1/2] = [0,1/4] ∪ [1/4,1/2]
    CHECK(coarse[1] == fine[2]);
}

TEST_CASE("a user-supplied triangulated square torus is doubling-stable") {
    Lattice z2 = Lattice::create(Mat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));
    RationalSimplex lower =
        RationalSimplex::create({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}});
    RationalSimplex upper =
        RationalSimplex::create({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
    DoublingComplex omega{z2, {lower, upper}};
    CHECK(verify_doubling_stable(omega).empty());

    TransferSystem sys = transfer_matrix(omega);
    CHECK(sys.T == Mat::from_rows({{Rat(3, 4), Rat(1, 4)}, {Rat(1, 4), Rat(3, 4)}}));
    CHECK(sys.masses == RatVec{Rat(1, 2), Rat(1, 2)});

    PLFunction three = PLFunction::create(z2, {
                                                  {lower, {Rat(0), Rat(0)}, Rat(3)},
                                                  {upper, {Rat(0), Rat(0)}, Rat(3)},
                                              });
    CHECK(solve_canonical_integrals(sys, three) == RatVec{Rat(1, 2), Rat(1, 2)});
}
