#pragma once

#include <string>
#include <vector>

#include "troph/geometry.hpp"

namespace troph {

/// One affine chart of a piecewise-linear function: x ↦ gradient·x + constant
/// on a simplex held by a fundamental-domain representative.
struct AffinePiece {
    RationalSimplex cell;
    RatVec gradient;
    Rat constant;

    Rat value(const RatVec& x) const { return dot(gradient, x) + constant; }
};

/// Piecewise-linear function on the tropical torus R^n/Γ. Well-defined as a
/// torus function only when pl_validate returns no violations: pieces must
/// agree on shared faces and across Γ-translates.
class PLFunction {
public:
    static PLFunction create(Lattice lattice, std::vector<AffinePiece> pieces);

    const Lattice& lattice() const { return lattice_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }

private:
    PLFunction(Lattice lattice, std::vector<AffinePiece> pieces)
        : lattice_(std::move(lattice)), pieces_(std::move(pieces)) {}

    Lattice lattice_;
    std::vector<AffinePiece> pieces_;
};

struct MeasureTerm {
    Rat coeff;
    RationalSimplex simplex;
};

/// Signed measure Σ coeff_i · δ_{Δ_i}, where δ_Δ is normalized Lebesgue
/// measure on Δ with total mass normalized_volume(Δ). Negative coefficients
/// represent differences.
struct SimplicialMeasure {
    Lattice lattice;
    std::vector<MeasureTerm> terms;
};

SimplicialMeasure measure_add(const SimplicialMeasure& a, const SimplicialMeasure& b);
SimplicialMeasure measure_scale(const Rat& c, const SimplicialMeasure& mu);

struct Violation {
    std::string message;
};

/// Value at a torus point, using the lowest-index piece containing any
/// lattice translate of the point's representative. Throws OutsideSupport.
Rat pl_eval(const PLFunction& f, const TorusPoint& x);

/// Exact consistency audit: shape checks, face agreement between pieces, and
/// agreement across Γ-translates (periodicity). Empty result means pl_eval
/// does not depend on the choice of containing piece.
std::vector<Violation> pl_validate(const PLFunction& f);

/// ∫ over Δ of the piece's affine function against normalized Lebesgue
/// measure: normalized_volume(Δ) × value(barycenter). Throws NotContained
/// when Δ is not inside the piece's cell.
Rat integrate_affine(const AffinePiece& piece, const RationalSimplex& delta);

/// ∫ f dμ, exact. Measure simplices that straddle several cells are split by
/// an exact common refinement (segments in any ambient dimension; triangles
/// for a 2-dimensional torus). Throws RefinementUnsupported beyond that,
/// OutsideSupport if μ charges territory outside f's cells.
Rat integrate_pl(const PLFunction& f, const SimplicialMeasure& mu);

/// Pushforward under an injective-on-each-simplex affine map: (c, Δ) becomes
/// (c · vol(Δ)/vol(AΔ), AΔ). Total mass is preserved. The target lattice
/// must be supplied when the map changes the ambient dimension.
SimplicialMeasure pushforward_affine(const SimplicialMeasure& mu, const AffineMap& map);
SimplicialMeasure pushforward_affine(const SimplicialMeasure& mu, const AffineMap& map,
                                     const Lattice& target);

Rat total_mass(const SimplicialMeasure& mu);

/// max |value| over all cell vertices; equals sup|f| on the support since
/// affine functions attain extrema at vertices.
Rat sup_abs_at_vertices(const PLFunction& f);

}  // namespace troph
