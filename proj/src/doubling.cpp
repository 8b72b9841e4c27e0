#include "troph/doubling.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "troph/errors.hpp"

namespace troph {

namespace {

Mat doubling_linear(std::size_t n) {
    Mat m = Mat::identity(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(2);
    return m;
}

AffineMap doubling_map(std::size_t n) { return AffineMap{doubling_linear(n), RatVec(n, Rat(0))}; }

bool is_zero_vec(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& c) { return c.is_zero(); });
}

}  // namespace

DoublingComplex build_orbit_complex(const std::vector<Rat>& breakpoints, const Lattice& gamma,
                                    long budget) {
    if (gamma.dim() != 1)
        throw Error(ErrorCode::DimensionMismatch,
                    "orbit complexes are generated for 1-dimensional tori only");
    Rat period = gamma.covolume();

    // Breakpoints reduced to [0, period); doubling acts as x ↦ 2x mod period.
    std::set<Rat> closed;
    std::vector<Rat> frontier;
    auto reduce = [&](const Rat& x) { return (x / period).frac() * period; };
    for (const Rat& b : breakpoints) frontier.push_back(reduce(b));
    if (frontier.empty()) frontier.push_back(Rat(0));
    while (!frontier.empty()) {
        Rat x = frontier.back();
        frontier.pop_back();
        if (!closed.insert(x).second) continue;
        if (static_cast<long>(closed.size()) > budget)
            throw Error(ErrorCode::OrbitBudgetExceeded,
                        "breakpoint orbit exceeded the budget of " + std::to_string(budget));
        frontier.push_back(reduce(x + x));
    }

    std::vector<Rat> points(closed.begin(), closed.end());
    DoublingComplex omega{gamma, {}, DoublingComplex::Provenance::Generated};
    for (std::size_t i = 0; i < points.size(); ++i) {
        Rat lo = points[i];
        Rat hi = i + 1 < points.size() ? points[i + 1] : points[0] + period;
        omega.cells.push_back(RationalSimplex::create({{lo}, {hi}}));
    }
    return omega;
}

std::vector<Violation> verify_doubling_stable(const DoublingComplex& omega) {
    std::vector<Violation> out;
    const std::size_t n = omega.lattice.dim();
    for (const RationalSimplex& cell : omega.cells)
        if (cell.ambient_dim() != n) {
            out.push_back({"cell does not live in the torus ambient space"});
            return out;
        }

    // Pairwise disjoint relative interiors of the torus images.
    for (std::size_t i = 0; i < omega.cells.size(); ++i) {
        for (std::size_t j = i; j < omega.cells.size(); ++j) {
            for (const RatVec& shift :
                 candidate_translates(omega.cells[i], omega.cells[j], omega.lattice)) {
                if (i == j && is_zero_vec(shift)) continue;
                if (relint_overlap(omega.cells[i], omega.cells[j], shift)) {
                    std::ostringstream os;
                    os << "cells " << i << " and " << j
                       << " have overlapping interiors on the torus";
                    out.push_back({os.str()});
                }
            }
        }
    }

    // Each doubled cell must decompose exactly into translated cells. With
    // interiors disjoint, the decomposition is exact iff the volumes of the
    // contained translates add up to the doubled volume.
    AffineMap dbl = doubling_map(n);
    for (std::size_t i = 0; i < omega.cells.size(); ++i) {
        RationalSimplex image = apply_affine(dbl, omega.cells[i]);
        Rat want = normalized_volume(image);
        Rat have(0);
        for (const RationalSimplex& cell : omega.cells) {
            if (cell.dim() != image.dim()) continue;
            for (const RatVec& shift : candidate_translates(image, cell, omega.lattice)) {
                RationalSimplex shifted = cell.translated(shift);
                if (simplex_contains_simplex(image, shifted)) have += normalized_volume(cell);
            }
        }
        if (have != want) {
            std::ostringstream os;
            os << "doubled cell " << i << " does not decompose into cells: covered volume "
               << have.str() << " of " << want.str();
            out.push_back({os.str()});
        }
    }
    return out;
}

TransferSystem transfer_matrix(const DoublingComplex& omega) {
    std::vector<Violation> bad = verify_doubling_stable(omega);
    if (!bad.empty())
        throw Error(ErrorCode::UnstableComplex,
                    "complex is not doubling-stable: " + bad.front().message);

    const std::size_t k = omega.cells.size();
    TransferSystem sys{omega, Mat(k, k), RatVec(k)};
    AffineMap dbl = doubling_map(omega.lattice.dim());
    for (std::size_t i = 0; i < k; ++i) {
        sys.masses[i] = normalized_volume(omega.cells[i]);
        RationalSimplex image = apply_affine(dbl, omega.cells[i]);
        // Each sheet of the doubling over Δ2 inside the image contributes
        // 2^{-e}: halving back onto Δ1 scales e-dimensional volume by 2^{-e}.
        Rat sheet = pow_int(Rat(1, 2), static_cast<long>(omega.cells[i].dim()));
        for (std::size_t j = 0; j < k; ++j) {
            if (omega.cells[j].dim() != image.dim()) continue;
            long sheets = 0;
            for (const RatVec& shift : candidate_translates(image, omega.cells[j], omega.lattice))
                if (simplex_contains_simplex(image, omega.cells[j].translated(shift))) ++sheets;
            sys.T.at(i, j) = Rat(sheets) * sheet;
        }
    }
    return sys;
}

RatVec cell_integrals(const PLFunction& g, const DoublingComplex& omega) {
    if (!(g.lattice() == omega.lattice))
        throw Error(ErrorCode::DimensionMismatch, "datum and complex use different tori");
    RatVec G;
    G.reserve(omega.cells.size());
    for (const RationalSimplex& cell : omega.cells)
        G.push_back(integrate_pl(g, SimplicialMeasure{omega.lattice, {{Rat(1), cell}}}));
    return G;
}

RatVec solve_canonical_integrals(const TransferSystem& sys, const PLFunction& g) {
    RatVec G = cell_integrals(g, sys.complex);
    const std::size_t k = sys.complex.cells.size();
    Mat M(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            M.at(i, j) = (i == j ? Rat(4) : Rat(0)) - sys.T.at(i, j);
    auto F = solve_square(M, G);
    if (!F)
        throw Error(ErrorCode::SingularSystem,
                    "4I - T is singular; the transfer system violates mass conservation");
    return *F;
}

}  // namespace troph
