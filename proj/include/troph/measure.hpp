#pragma once

#include <string>
#include <vector>

#include "troph/pl.hpp"

namespace troph {

/// Semistable-stratum datum entering the canonical measure. e is the
/// stratum dimension; the simplex, of dimension d − e, carries the two
/// complete rational lattices of its span and the tropicalized map into
/// the torus.
struct StratumDatum {
    std::string name;
    long e = 0;
    RationalSimplex simplex;
    long degree = 0;  // deg_H of the stratum closure
    Lattice lambda_L;
    Lattice lambda;
    AffineMap map;
    bool nondegenerate = true;
};

struct StrataBundle {
    long d = 0;            // dimension of the subvariety
    long map_degree = 1;   // deg(f) of the alteration
    long expected_mass = 0;  // deg_L(Z)
    Lattice torus;
    std::vector<StratumDatum> strata;
};

/// t_S = d!/(d−e)! · degree · vol(Λ_L)/vol(Λ). Throws DegenerateStratum for
/// degenerate strata, which contribute zero to the assembled measure.
Rat gubler_coefficient(long d, const StratumDatum& s);

/// Σ over nondegenerate strata of t_S · δ_{Δ_S}, in input order, on the
/// source coordinates (before pushforward).
SimplicialMeasure assemble_measure(const StrataBundle& bundle);

/// Termwise deg(f) · pushforward under each stratum's map; μ must be the
/// assembled measure (one term per nondegenerate stratum, in order).
SimplicialMeasure pushforward_measure(const StrataBundle& bundle, const SimplicialMeasure& mu);

struct MassReport {
    bool ok = false;
    Rat actual;
    Rat expected;
};

/// Canonical measures carry total mass deg_L(Z); this is the data-sanity
/// gate comparing exactly.
MassReport mass_check(const StrataBundle& bundle, const SimplicialMeasure& mu);

}  // namespace troph
