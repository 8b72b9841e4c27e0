#pragma once

#include <string>
#include <vector>

#include "troph/metric.hpp"

namespace troph {

struct PlaceRecord {
    std::string place;
    Rat local_integral;  // ∫ −log‖s‖ c1(L̂)^d δ_Z at this place
};

/// One layer of the induction on dim Z: the lower-dimensional intersection
/// number plus the finitely many local integrals.
struct HeightProblem {
    long d = 0;
    long degL = 1;
    Rat lower_term;
    std::vector<PlaceRecord> places;
};

struct HeightResult {
    Rat intersection;  // ⟨L̂^{d+1}|Z⟩ = lower term + Σ local integrals
    Rat height;        // intersection / ((d+1)·degL)
    long d = 0;
    long degL = 1;
    Rat lower_term;
    std::vector<PlaceRecord> places;  // sorted by place id: the certificate ledger
};

HeightResult induction_step(const HeightProblem& p);

/// The theorem's witness: the exact fraction in lowest terms together with
/// every contributing term. Cannot fail by construction.
struct Certificate {
    std::string fraction;      // height as "p/q"
    std::string intersection;  // "p/q"
    std::vector<std::pair<std::string, std::string>> terms;
};

Certificate assert_rational(const HeightResult& r);

/// Partial sums S_n = Σ_{k<n} 4^{−(k+1)} g(2^k x) of the limit defining
/// λ(x), with the exact gap λ(x) − S_n at each step. The gaps contract
/// geometrically; along the orbit cycle, exactly by 4^c every c steps.
struct ProbeRow {
    long n = 0;
    Rat partial;
    Rat gap;
};

std::vector<ProbeRow> tate_limit_probe(const CanonicalDatum& datum, const TorusPoint& x,
                                       long n_max, long budget = kDefaultOrbitBudget);

}  // namespace troph
