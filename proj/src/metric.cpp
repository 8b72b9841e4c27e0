#include "troph/metric.hpp"

#include <map>
#include <sstream>

#include "troph/errors.hpp"

namespace troph {

namespace {

// Forward orbit of x under doubling, in lattice coordinates where the map
// is coordinatewise c ↦ frac(2c). Returns the visited points and the index
// at which the cycle starts.
struct Orbit {
    std::vector<RatVec> coords;
    std::size_t cycle_start = 0;
};

Orbit doubling_orbit(const TorusPoint& x, long budget) {
    Orbit orbit;
    std::map<RatVec, std::size_t> seen;
    RatVec c = reduce_point(x.ambient, x.lattice).coords();
    for (;;) {
        auto [it, fresh] = seen.emplace(c, orbit.coords.size());
        if (!fresh) {
            orbit.cycle_start = it->second;
            return orbit;
        }
        orbit.coords.push_back(c);
        if (static_cast<long>(orbit.coords.size()) > budget)
            throw Error(ErrorCode::OrbitBudgetExceeded,
                        "doubling orbit exceeded the budget of " + std::to_string(budget));
        for (Rat& v : c) v = (v + v).frac();
    }
}

}  // namespace

CanonicalDatum CanonicalDatum::create(Lattice lattice, PLFunction g) {
    if (!(g.lattice() == lattice))
        throw Error(ErrorCode::DimensionMismatch, "datum lattice differs from the function's");
    std::vector<Violation> bad = pl_validate(g);
    if (!bad.empty())
        throw Error(ErrorCode::ValidationFailed,
                    "divisor datum is not a torus function: " + bad.front().message);
    return CanonicalDatum{std::move(lattice), std::move(g)};
}

CanonicalDatum tate_datum(const Rat& ell) {
    if (ell.sign() <= 0)
        throw Error(ErrorCode::ValidationFailed, "Tate parameter must be positive");
    Lattice gamma = lattice_new(Mat::from_rows({{ell}}));
    Rat half = ell / Rat(2);
    std::vector<AffinePiece> pieces;
    pieces.push_back({RationalSimplex::create({{Rat(0)}, {half}}), {Rat(-1)}, ell / Rat(4)});
    pieces.push_back({RationalSimplex::create({{half}, {ell}}), {Rat(1)}, ell * Rat(-3, 4)});
    return CanonicalDatum::create(gamma, PLFunction::create(gamma, std::move(pieces)));
}

PLFunction scale_pl(const Rat& c, const PLFunction& f) {
    std::vector<AffinePiece> pieces = f.pieces();
    for (AffinePiece& p : pieces) {
        for (Rat& gcoord : p.gradient) gcoord *= c;
        p.constant *= c;
    }
    return PLFunction::create(f.lattice(), std::move(pieces));
}

SeriesValue lambda_series(const CanonicalDatum& datum, const TorusPoint& x, long K) {
    if (K <= 0) throw Error(ErrorCode::ValidationFailed, "series depth must be positive");
    TorusPoint y = reduce_point(x.ambient, datum.lattice);
    Rat value(0);
    Rat weight(1, 4);
    for (long k = 0; k < K; ++k) {
        value += weight * pl_eval(datum.g, y);
        weight *= Rat(1, 4);
        y = reduce_point(vec_add(y.ambient, y.ambient), datum.lattice);
    }
    Rat bound = sup_abs_at_vertices(datum.g) / Rat(3) * pow4(-K);
    return {value, bound};
}

Rat lambda_exact_periodic(const CanonicalDatum& datum, const TorusPoint& x, long budget) {
    Orbit orbit = doubling_orbit(x, budget);
    const std::size_t L = orbit.coords.size();
    const std::size_t p = orbit.cycle_start;
    const std::size_t c = L - p;

    std::vector<Rat> g_vals(L);
    for (std::size_t i = 0; i < L; ++i) {
        TorusPoint y{datum.lattice.from_coords(orbit.coords[i]), datum.lattice};
        g_vals[i] = pl_eval(datum.g, y);
    }

    // On the cycle, iterating 4λ(y) = g(y) + λ(2y) c times gives
    //   λ(y_p) = (Σ_{i<c} 4^{c−1−i} g(y_{p+i})) / (4^c − 1).
    // The numerator is evaluated by Horner over a common denominator so the
    // only rational reduction happens once at the end.
    mpz_class denom_lcm(1);
    for (std::size_t i = p; i < L; ++i)
        mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), g_vals[i].den().get_mpz_t());
    mpz_class horner(0);
    for (std::size_t i = p; i < L; ++i)
        horner = 4 * horner + g_vals[i].num() * (denom_lcm / g_vals[i].den());
    mpz_class four_c;
    mpz_ui_pow_ui(four_c.get_mpz_t(), 4, static_cast<unsigned long>(c));
    Rat lambda(horner, denom_lcm * (four_c - 1));

    for (std::size_t i = p; i-- > 0;) lambda = (g_vals[i] + lambda) / Rat(4);
    return lambda;
}

Rat check_functional_equation(const CanonicalDatum& datum,
                              const std::function<Rat(const TorusPoint&)>& lambda,
                              const std::vector<TorusPoint>& samples) {
    Rat worst(0);
    for (const TorusPoint& x : samples) {
        TorusPoint y = reduce_point(x.ambient, datum.lattice);
        TorusPoint y2 = reduce_point(vec_add(y.ambient, y.ambient), datum.lattice);
        Rat residual = (Rat(4) * lambda(y) - lambda(y2) - pl_eval(datum.g, y)).abs();
        if (residual > worst) worst = residual;
    }
    return worst;
}

Rat tate_oracle(const Rat& ell, const Rat& x) {
    if (ell.sign() <= 0)
        throw Error(ErrorCode::ValidationFailed, "Tate parameter must be positive");
    Rat t = (x / ell).frac();
    Rat b2 = t * t - t + Rat(1, 6);
    return ell / Rat(2) * b2;
}

std::vector<Violation> cocycle_check(const PLFunction& f, const CocycleDatum& cocycle) {
    std::vector<Violation> out;
    const std::size_t n = f.lattice().dim();
    if (cocycle.generators.size() != n) {
        out.push_back({"cocycle must supply one generator entry per lattice basis row"});
        return out;
    }
    for (std::size_t t = 0; t < n; ++t) {
        const CocycleGenerator& gen = cocycle.generators[t];
        if (gen.z_gradient.size() != n) {
            out.push_back({"cocycle gradient has wrong dimension"});
            return out;
        }
        RatVec shift = f.lattice().basis().row(t);
        for (std::size_t i = 0; i < f.pieces().size(); ++i) {
            for (const RatVec& v : f.pieces()[i].cell.vertices()) {
                RatVec moved = vec_add(v, shift);
                for (std::size_t j = 0; j < f.pieces().size(); ++j) {
                    if (!simplex_contains(f.pieces()[j].cell, moved)) continue;
                    Rat defect = f.pieces()[j].value(moved) - f.pieces()[i].value(v);
                    Rat want = dot(gen.z_gradient, v) + gen.z_constant + gen.c;
                    if (defect != want) {
                        std::ostringstream os;
                        os << "generator " << t << ", vertex " << [&] {
                            std::ostringstream vs;
                            vs << "(";
                            for (std::size_t k = 0; k < v.size(); ++k)
                                vs << (k ? ", " : "") << v[k].str();
                            vs << ")";
                            return vs.str();
                        }() << ": defect " << defect.str() << " but cocycle prescribes "
                            << want.str();
                        out.push_back({os.str()});
                    }
                    break;  // lowest-index piece rules, as in evaluation
                }
            }
        }
    }
    return out;
}

std::vector<Violation> cocycle_check(const CanonicalDatum& datum, const CocycleDatum& cocycle) {
    return cocycle_check(datum.g, cocycle);
}

Rat local_integral(const CanonicalDatum& datum, const TransferSystem& sys,
                   const SimplicialMeasure& mu_skeleton,
                   const std::vector<std::pair<CorrectionTerm, SimplicialMeasure>>& corrections) {
    if (!(datum.lattice == sys.complex.lattice) || !(mu_skeleton.lattice == datum.lattice))
        throw Error(ErrorCode::DimensionMismatch, "datum, system and measure tori differ");

    RatVec F = solve_canonical_integrals(sys, datum.g);

    Rat total(0);
    for (const MeasureTerm& term : mu_skeleton.terms) {
        if (term.coeff.is_zero()) continue;
        if (term.simplex.dim() == 0) {
            TorusPoint pt = reduce_point(term.simplex.vertices()[0], datum.lattice);
            total += term.coeff * lambda_exact_periodic(datum, pt);
            continue;
        }
        // λ is not piecewise linear, so partial cells carry no exact
        // integral; the term must decompose into whole translated cells.
        Rat want = normalized_volume(term.simplex);
        Rat have(0);
        for (std::size_t j = 0; j < sys.complex.cells.size(); ++j) {
            const RationalSimplex& cell = sys.complex.cells[j];
            if (cell.dim() != term.simplex.dim()) continue;
            for (const RatVec& shift : candidate_translates(term.simplex, cell, datum.lattice)) {
                if (simplex_contains_simplex(term.simplex, cell.translated(shift))) {
                    have += normalized_volume(cell);
                    total += term.coeff * F[j];
                }
            }
        }
        if (have != want)
            throw Error(ErrorCode::RefinementUnsupported,
                        "skeleton measure term does not decompose into transfer cells");
    }

    for (const auto& [corr, mu] : corrections)
        total += Rat(corr.sign) * integrate_pl(corr.pl, mu);
    return total;
}

}  // namespace troph
