#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "troph/doubling.hpp"
#include "troph/pl.hpp"

namespace troph {

/// Divisor datum on the torus: g = −log|h∘ι| for h = s⊗4 ⊗ [2]*s⊗−1. The
/// canonical Weil function λ = −log‖s‖ is the unique bounded solution of
/// 4λ(x) − λ(2x) = g(x).
struct CanonicalDatum {
    Lattice lattice;
    PLFunction g;

    /// Throws ValidationFailed unless pl_validate(g) is empty.
    static CanonicalDatum create(Lattice lattice, PLFunction g);
};

/// The divisor (O) on the Tate curve with skeleton R/ellZ:
/// g(x) = ell/4 − x on [0, ell/2], g(x) = x − 3ell/4 on [ell/2, ell].
CanonicalDatum tate_datum(const Rat& ell);

/// Same cells, gradients and constants scaled by c (tensor power of the
/// section data at the PL level).
PLFunction scale_pl(const Rat& c, const PLFunction& f);

struct SeriesValue {
    Rat value;  // Σ_{k<K} 4^{−(k+1)} g(2^k x)
    Rat bound;  // certified |λ(x) − value| ≤ bound = sup|g|/3 · 4^{−K}
};

SeriesValue lambda_series(const CanonicalDatum& datum, const TorusPoint& x, long K);

/// Exact λ(x) for rational x: the doubling orbit of x is eventually
/// periodic, and the functional equation becomes a finite linear system
/// along the orbit cycle.
Rat lambda_exact_periodic(const CanonicalDatum& datum, const TorusPoint& x,
                          long budget = kDefaultOrbitBudget);

/// max over samples of |4λ(x) − λ(2x) − g(x)| for a caller-supplied
/// evaluation procedure; exactly zero for lambda_exact_periodic.
Rat check_functional_equation(const CanonicalDatum& datum,
                              const std::function<Rat(const TorusPoint&)>& lambda,
                              const std::vector<TorusPoint>& samples);

/// Classical Néron local height on a Tate curve with parameter ell:
/// (ell/2)·B2({x/ell}), B2(t) = t² − t + 1/6. Computed by a route entirely
/// independent of the PL machinery; used to cross-validate it.
Rat tate_oracle(const Rat& ell, const Rat& x);

/// Theta-cocycle data: across the lattice generator t, the model metric's
/// −log‖·‖ changes by z_t(x) + c_t with z_t affine.
struct CocycleGenerator {
    RatVec z_gradient;
    Rat z_constant;
    Rat c;
};

struct CocycleDatum {
    std::vector<CocycleGenerator> generators;  // one per lattice basis row
};

/// Empty iff for every basis generator t and every pair of pieces, the
/// translation defect f(v+t) − f(v) equals z_t(v) + c_t at each cell vertex
/// v where both sides are defined by the pieces.
std::vector<Violation> cocycle_check(const PLFunction& f, const CocycleDatum& cocycle);
std::vector<Violation> cocycle_check(const CanonicalDatum& datum, const CocycleDatum& cocycle);

/// Model-metric comparison term restricted to a stratum simplex; enters the
/// local integral with the given sign.
struct CorrectionTerm {
    RationalSimplex simplex;
    PLFunction pl;
    int sign = 1;
};

/// ∫ −log‖s‖ against the local canonical measure, decomposed as the
/// skeleton term (measure expressed over the transfer complex, integrated
/// via the solved F-vector; point atoms evaluated exactly) plus signed
/// correction integrals.
Rat local_integral(const CanonicalDatum& datum, const TransferSystem& sys,
                   const SimplicialMeasure& mu_skeleton,
                   const std::vector<std::pair<CorrectionTerm, SimplicialMeasure>>& corrections);

}  // namespace troph
