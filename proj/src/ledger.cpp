#include "troph/ledger.hpp"

#include <algorithm>

#include "troph/errors.hpp"

namespace troph {

HeightResult induction_step(const HeightProblem& p) {
    if (p.d < 0) throw Error(ErrorCode::ValidationFailed, "cycle dimension must be >= 0");
    if (p.degL < 1) throw Error(ErrorCode::ValidationFailed, "degL must be >= 1");
    HeightResult r;
    r.d = p.d;
    r.degL = p.degL;
    r.lower_term = p.lower_term;
    r.places = p.places;
    std::stable_sort(r.places.begin(), r.places.end(),
                     [](const PlaceRecord& a, const PlaceRecord& b) { return a.place < b.place; });
    r.intersection = p.lower_term;
    for (const PlaceRecord& rec : r.places) r.intersection += rec.local_integral;
    r.height = r.intersection / Rat((p.d + 1) * p.degL);
    return r;
}

Certificate assert_rational(const HeightResult& r) {
    Certificate c;
    c.fraction = r.height.str();
    c.intersection = r.intersection.str();
    c.terms.emplace_back("lower_term", r.lower_term.str());
    for (const PlaceRecord& rec : r.places)
        c.terms.emplace_back("place " + rec.place, rec.local_integral.str());
    c.terms.emplace_back("normalization (d+1)*degL", Rat((r.d + 1) * r.degL).str());
    return c;
}

std::vector<ProbeRow> tate_limit_probe(const CanonicalDatum& datum, const TorusPoint& x,
                                       long n_max, long budget) {
    if (n_max < 0) throw Error(ErrorCode::ValidationFailed, "probe length must be >= 0");
    Rat limit = lambda_exact_periodic(datum, x, budget);
    std::vector<ProbeRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max) + 1);
    Rat partial(0);
    Rat weight(1, 4);
    TorusPoint y = reduce_point(x.ambient, datum.lattice);
    for (long n = 0; n <= n_max; ++n) {
        rows.push_back({n, partial, limit - partial});
        partial += weight * pl_eval(datum.g, y);
        weight *= Rat(1, 4);
        y = reduce_point(vec_add(y.ambient, y.ambient), datum.lattice);
    }
    return rows;
}

}  // namespace troph
