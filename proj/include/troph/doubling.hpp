#pragma once

#include <vector>

#include "troph/pl.hpp"

namespace troph {

inline constexpr long kDefaultOrbitBudget = 1000000;

/// Finite simplicial subdivision of the torus whose cells map onto unions
/// of cells under x ↦ 2x. This is what makes the doubling pushforward an
/// exact matrix.
struct DoublingComplex {
    enum class Provenance { Generated, UserSupplied };

    Lattice lattice;
    std::vector<RationalSimplex> cells;
    Provenance provenance = Provenance::UserSupplied;
};

/// Partition of the circle R/Γ (dim 1) by the forward orbit closure of the
/// breakpoints under doubling. The orbit of rational breakpoints is finite;
/// the budget guards against nontermination bugs only.
DoublingComplex build_orbit_complex(const std::vector<Rat>& breakpoints, const Lattice& gamma,
                                    long budget = kDefaultOrbitBudget);

/// Empty result iff cells have pairwise disjoint relative interiors on the
/// torus and every doubled cell decomposes exactly into cells.
std::vector<Violation> verify_doubling_stable(const DoublingComplex& omega);

/// The doubling pushforward [2]_* δ_{Δ1} = Σ r_{Δ1,Δ2} δ_{Δ2} in matrix form.
struct TransferSystem {
    DoublingComplex complex;
    Mat T;          // entries r_{Δ1,Δ2} ≥ 0
    RatVec masses;  // m(δ_Δ) = normalized_volume(Δ)
};

TransferSystem transfer_matrix(const DoublingComplex& omega);

/// G_Δ = ∫ g δ_Δ per cell.
RatVec cell_integrals(const PLFunction& g, const DoublingComplex& omega);

/// Exact solve of (4I − T) F = G; F_Δ = ∫ λ δ_Δ for the canonical Weil
/// function λ of the datum g. Throws SingularSystem if 4I − T degenerates,
/// which the mass-conservation contraction argument rules out for valid T.
RatVec solve_canonical_integrals(const TransferSystem& sys, const PLFunction& g);

}  // namespace troph
