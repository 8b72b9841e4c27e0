#include "troph/pl.hpp"

#include <algorithm>
#include <sstream>

#include "troph/errors.hpp"

namespace troph {

namespace {

RationalSimplex point_simplex(const RatVec& p) { return RationalSimplex::create({p}); }

std::string format_vec(const RatVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].str();
    os << ")";
    return os.str();
}

bool is_zero_vec(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& c) { return c.is_zero(); });
}

}  // namespace

PLFunction PLFunction::create(Lattice lattice, std::vector<AffinePiece> pieces) {
    const std::size_t n = lattice.dim();
    for (const AffinePiece& p : pieces) {
        if (p.cell.ambient_dim() != n)
            throw Error(ErrorCode::DimensionMismatch, "piece cell does not live in the torus");
        if (p.gradient.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "piece gradient has wrong dimension");
        if (p.cell.dim() > n)
            throw Error(ErrorCode::DimensionMismatch, "piece cell dimension exceeds torus dimension");
    }
    return PLFunction(std::move(lattice), std::move(pieces));
}

SimplicialMeasure measure_add(const SimplicialMeasure& a, const SimplicialMeasure& b) {
    if (!(a.lattice == b.lattice))
        throw Error(ErrorCode::DimensionMismatch, "measures live on different tori");
    SimplicialMeasure out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
}

SimplicialMeasure measure_scale(const Rat& c, const SimplicialMeasure& mu) {
    SimplicialMeasure out = mu;
    for (auto& t : out.terms) t.coeff *= c;
    return out;
}

Rat pl_eval(const PLFunction& f, const TorusPoint& x) {
    if (!(x.lattice == f.lattice()))
        throw Error(ErrorCode::DimensionMismatch, "point and function use different tori");
    TorusPoint y = reduce_point(x.ambient, f.lattice());
    RationalSimplex pt = point_simplex(y.ambient);
    for (const AffinePiece& piece : f.pieces()) {
        for (const RatVec& shift : candidate_translates(piece.cell, pt, f.lattice())) {
            RatVec rep = vec_add(y.ambient, shift);
            if (simplex_contains(piece.cell, rep)) return piece.value(rep);
        }
    }
    throw Error(ErrorCode::OutsideSupport,
                "point " + format_vec(y.ambient) + " is outside the support");
}

std::vector<Violation> pl_validate(const PLFunction& f) {
    std::vector<Violation> out;
    const auto& pieces = f.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (std::size_t j = i; j < pieces.size(); ++j) {
            for (const RatVec& shift :
                 candidate_translates(pieces[i].cell, pieces[j].cell, f.lattice())) {
                if (i == j && is_zero_vec(shift)) continue;
                // h(x) = piece_i(x) − piece_j(x − shift) on cell_i ∩ (cell_j + shift)
                RatVec grad = vec_sub(pieces[i].gradient, pieces[j].gradient);
                Rat cst = pieces[i].constant - pieces[j].constant +
                          dot(pieces[j].gradient, shift);
                auto range = affine_range_on_overlap(pieces[i].cell, pieces[j].cell, shift,
                                                     grad, cst);
                if (!range) continue;
                if (range->first.sign() != 0 || range->second.sign() != 0) {
                    std::ostringstream os;
                    os << "pieces " << i << " and " << j << " disagree on their overlap";
                    if (!is_zero_vec(shift)) os << " under translate " << format_vec(shift);
                    os << ": difference ranges over [" << range->first.str() << ", "
                       << range->second.str() << "]";
                    out.push_back({os.str()});
                }
            }
        }
    }
    return out;
}

Rat integrate_affine(const AffinePiece& piece, const RationalSimplex& delta) {
    if (!simplex_contains_simplex(piece.cell, delta))
        throw Error(ErrorCode::NotContained, "simplex is not contained in the piece's cell");
    return normalized_volume(delta) * piece.value(delta.barycenter());
}

namespace {

// Sub-interval of a straddling segment claimed by one piece: the segment
// A + t(B − A), t ∈ [t0, t1], already shifted into the piece's cell.
struct SegmentClaim {
    Rat t0, t1;
    std::size_t piece;
    RatVec shift;
};

Rat integrate_segment(const PLFunction& f, const Rat& coeff, const RationalSimplex& delta) {
    const RatVec& A = delta.vertices()[0];
    const RatVec& B = delta.vertices()[1];
    RatVec dir = vec_sub(B, A);

    std::vector<SegmentClaim> claims;
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
        const AffinePiece& piece = f.pieces()[i];
        if (piece.cell.dim() < 1) continue;
        for (const RatVec& shift : candidate_translates(piece.cell, delta, f.lattice())) {
            auto bcA = barycentric_coords(piece.cell, vec_add(A, shift));
            auto bcB = barycentric_coords(piece.cell, vec_add(B, shift));
            if (!bcA || !bcB) continue;  // segment leaves the cell's span
            Rat t0(0), t1(1);
            bool empty = false;
            for (std::size_t r = 0; r < bcA->size() && !empty; ++r) {
                Rat a = (*bcA)[r], slope = (*bcB)[r] - (*bcA)[r];
                if (slope.is_zero()) {
                    if (a.sign() < 0) empty = true;
                } else {
                    Rat crossing = -a / slope;  // where a + t·slope = 0
                    if (slope.sign() > 0) {
                        if (crossing > t0) t0 = crossing;
                    } else {
                        if (crossing < t1) t1 = crossing;
                    }
                }
            }
            if (!empty && t0 < t1) claims.push_back({t0, t1, i, shift});
        }
    }

    // Split [0,1] at every claim endpoint; each elementary interval is
    // integrated with its lowest-index claimant, so overlapping cells (legal
    // when the values agree) are not double-counted.
    std::vector<Rat> cuts = {Rat(0), Rat(1)};
    for (const auto& c : claims) {
        cuts.push_back(c.t0);
        cuts.push_back(c.t1);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Rat total(0);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const Rat& lo = cuts[k];
        const Rat& hi = cuts[k + 1];
        if (lo < Rat(0) || hi > Rat(1)) continue;
        const SegmentClaim* owner = nullptr;
        for (const auto& c : claims)
            if (c.t0 <= lo && hi <= c.t1) {
                owner = &c;
                break;
            }
        if (!owner)
            throw Error(ErrorCode::OutsideSupport,
                        "segment leaves the function's support between t=" + lo.str() +
                            " and t=" + hi.str());
        RatVec p0 = vec_add(vec_add(A, owner->shift), vec_scale(lo, dir));
        RatVec p1 = vec_add(vec_add(A, owner->shift), vec_scale(hi, dir));
        total += coeff * integrate_affine(f.pieces()[owner->piece],
                                          RationalSimplex::create({p0, p1}));
    }
    return total;
}

// Clips a convex polygon in the plane against the half-plane normal·x ≥ bound.
std::vector<RatVec> clip_halfplane(const std::vector<RatVec>& poly, const RatVec& normal,
                                   const Rat& bound) {
    std::vector<RatVec> out;
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        const RatVec& p = poly[i];
        const RatVec& q = poly[(i + 1) % k];
        Rat dp = dot(normal, p) - bound;
        Rat dq = dot(normal, q) - bound;
        if (dp.sign() >= 0) out.push_back(p);
        if ((dp.sign() > 0 && dq.sign() < 0) || (dp.sign() < 0 && dq.sign() > 0)) {
            Rat s = dp / (dp - dq);
            out.push_back(vec_add(p, vec_scale(s, vec_sub(q, p))));
        }
    }
    return out;
}

// Triangle cell as three half-planes; clips poly to cell ∩ poly.
std::vector<RatVec> clip_to_triangle(std::vector<RatVec> poly, const RationalSimplex& cell) {
    for (std::size_t e = 0; e < 3 && !poly.empty(); ++e) {
        const RatVec& vi = cell.vertices()[e];
        const RatVec& vj = cell.vertices()[(e + 1) % 3];
        const RatVec& vk = cell.vertices()[(e + 2) % 3];
        RatVec edge = vec_sub(vj, vi);
        RatVec normal = {-edge[1], edge[0]};
        Rat bound = dot(normal, vi);
        if (dot(normal, vk) < bound) {
            normal = vec_scale(Rat(-1), normal);
            bound = -bound;
        }
        poly = clip_halfplane(poly, normal, bound);
    }
    return poly;
}

// Fan triangulation dropping degenerate (collinear) triangles.
std::vector<RationalSimplex> triangulate(const std::vector<RatVec>& poly) {
    std::vector<RationalSimplex> out;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        Mat edges = Mat::from_rows({vec_sub(poly[i], poly[0]), vec_sub(poly[i + 1], poly[0])});
        if (rank(edges) < 2) continue;
        out.push_back(RationalSimplex::create({poly[0], poly[i], poly[i + 1]}));
    }
    return out;
}

Rat integrate_triangle(const PLFunction& f, const Rat& coeff, const RationalSimplex& delta) {
    if (f.lattice().dim() != 2)
        throw Error(ErrorCode::RefinementUnsupported,
                    "triangle refinement is only implemented on a 2-dimensional torus");
    Rat target = normalized_volume(delta);
    Rat covered(0), total(0);
    for (const AffinePiece& piece : f.pieces()) {
        if (piece.cell.dim() != 2) continue;
        for (const RatVec& shift : candidate_translates(piece.cell, delta, f.lattice())) {
            std::vector<RatVec> poly;
            for (const RatVec& v : delta.vertices()) poly.push_back(vec_add(v, shift));
            poly = clip_to_triangle(std::move(poly), piece.cell);
            for (const RationalSimplex& tri : triangulate(poly)) {
                covered += normalized_volume(tri);
                total += coeff * integrate_affine(piece, tri);
            }
        }
    }
    // Pieces claiming interior-overlapping regions would oversum; a valid
    // complex never does, and the exact volume audit catches both failure
    // directions.
    if (covered < target)
        throw Error(ErrorCode::OutsideSupport, "triangle is not covered by the function's cells");
    if (covered > target)
        throw Error(ErrorCode::RefinementUnsupported,
                    "function cells overlap with positive area over the triangle");
    return total;
}

}  // namespace

Rat integrate_pl(const PLFunction& f, const SimplicialMeasure& mu) {
    if (!(f.lattice() == mu.lattice))
        throw Error(ErrorCode::DimensionMismatch, "function and measure use different tori");
    Rat total(0);
    for (const MeasureTerm& term : mu.terms) {
        if (term.simplex.ambient_dim() != f.lattice().dim())
            throw Error(ErrorCode::DimensionMismatch, "measure simplex has wrong dimension");
        if (term.coeff.is_zero()) continue;
        if (term.simplex.dim() == 0) {
            TorusPoint p = reduce_point(term.simplex.vertices()[0], f.lattice());
            total += term.coeff * pl_eval(f, p);  // point simplices have volume 1
            continue;
        }
        // fast path: the whole simplex fits inside one cell
        bool done = false;
        for (const AffinePiece& piece : f.pieces()) {
            for (const RatVec& shift :
                 candidate_translates(piece.cell, term.simplex, f.lattice())) {
                RationalSimplex shifted = term.simplex.translated(shift);
                if (simplex_contains_simplex(piece.cell, shifted)) {
                    total += term.coeff * integrate_affine(piece, shifted);
                    done = true;
                    break;
                }
            }
            if (done) break;
        }
        if (done) continue;
        if (term.simplex.dim() == 1)
            total += integrate_segment(f, term.coeff, term.simplex);
        else if (term.simplex.dim() == 2)
            total += integrate_triangle(f, term.coeff, term.simplex);
        else
            throw Error(ErrorCode::RefinementUnsupported,
                        "no refinement engine for straddling simplices of dimension " +
                            std::to_string(term.simplex.dim()));
    }
    return total;
}

SimplicialMeasure pushforward_affine(const SimplicialMeasure& mu, const AffineMap& map,
                                     const Lattice& target) {
    if (map.linear.cols != mu.lattice.dim() || map.linear.rows != target.dim())
        throw Error(ErrorCode::DimensionMismatch, "pushforward map has wrong shape");
    SimplicialMeasure out{target, {}};
    for (const MeasureTerm& term : mu.terms) {
        RationalSimplex image = apply_affine(map, term.simplex);
        Rat scale = normalized_volume(term.simplex) / normalized_volume(image);
        out.terms.push_back({term.coeff * scale, std::move(image)});
    }
    return out;
}

SimplicialMeasure pushforward_affine(const SimplicialMeasure& mu, const AffineMap& map) {
    if (map.linear.rows != mu.lattice.dim())
        throw Error(ErrorCode::DimensionMismatch,
                    "pushforward changes the ambient dimension; pass the target lattice");
    return pushforward_affine(mu, map, mu.lattice);
}

Rat total_mass(const SimplicialMeasure& mu) {
    Rat m(0);
    for (const MeasureTerm& term : mu.terms) m += term.coeff * normalized_volume(term.simplex);
    return m;
}

Rat sup_abs_at_vertices(const PLFunction& f) {
    Rat best(0);
    for (const AffinePiece& piece : f.pieces())
        for (const RatVec& v : piece.cell.vertices()) {
            Rat a = piece.value(v).abs();
            if (a > best) best = a;
        }
    return best;
}

}  // namespace troph
