#include "troph/measure.hpp"

#include "troph/errors.hpp"

namespace troph {

Rat gubler_coefficient(long d, const StratumDatum& s) {
    if (s.e < 0 || s.e > d)
        throw Error(ErrorCode::DimensionMismatch,
                    "stratum dimension must satisfy 0 <= e <= d");
    if (!s.nondegenerate)
        throw Error(ErrorCode::DegenerateStratum,
                    "stratum '" + s.name + "' is degenerate and contributes zero");
    // For a point simplex (e = d) the span is trivial and the ratio is a
    // convention; we still require the two lattices to be comparable.
    if (s.lambda_L.dim() != s.lambda.dim() ||
        (s.simplex.dim() > 0 && s.lambda.dim() != s.simplex.dim()))
        throw Error(ErrorCode::DimensionMismatch,
                    "stratum lattices must have the dimension of the simplex");
    Rat factor(1);
    for (long k = d - s.e + 1; k <= d; ++k) factor *= Rat(k);
    return factor * Rat(s.degree) * covolume_ratio(s.lambda_L, s.lambda);
}

SimplicialMeasure assemble_measure(const StrataBundle& bundle) {
    SimplicialMeasure mu{bundle.torus, {}};
    for (const StratumDatum& s : bundle.strata) {
        if (!s.nondegenerate) continue;
        if (s.simplex.ambient_dim() != bundle.torus.dim())
            throw Error(ErrorCode::DimensionMismatch,
                        "stratum simplex does not live in the torus ambient space");
        mu.terms.push_back({gubler_coefficient(bundle.d, s), s.simplex});
    }
    return mu;
}

SimplicialMeasure pushforward_measure(const StrataBundle& bundle, const SimplicialMeasure& mu) {
    std::vector<const StratumDatum*> live;
    for (const StratumDatum& s : bundle.strata)
        if (s.nondegenerate) live.push_back(&s);
    if (live.size() != mu.terms.size())
        throw Error(ErrorCode::ValidationFailed,
                    "measure terms do not match the bundle's nondegenerate strata");
    SimplicialMeasure out{bundle.torus, {}};
    for (std::size_t i = 0; i < live.size(); ++i) {
        SimplicialMeasure single{mu.lattice, {mu.terms[i]}};
        SimplicialMeasure image = pushforward_affine(single, live[i]->map, bundle.torus);
        image.terms[0].coeff *= Rat(bundle.map_degree);
        out.terms.push_back(image.terms[0]);
    }
    return out;
}

MassReport mass_check(const StrataBundle& bundle, const SimplicialMeasure& mu) {
    MassReport report;
    report.actual = total_mass(mu);
    report.expected = Rat(bundle.expected_mass);
    report.ok = report.actual == report.expected;
    return report;
}

}  // namespace troph
