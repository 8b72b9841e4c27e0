#include "troph/geometry.hpp"

#include <algorithm>

#include "troph/errors.hpp"
#include "troph/lp.hpp"

namespace troph {

Lattice Lattice::create(Mat basis) {
    if (basis.rows == 0 || basis.rows != basis.cols)
        throw Error(ErrorCode::SingularLattice, "lattice basis must be square and non-empty");
    Rat d = det(basis);
    if (d.is_zero())
        throw Error(ErrorCode::SingularLattice, "lattice basis is rank-deficient");
    Mat inverse = mat_inverse(basis);
    return Lattice(std::move(basis), std::move(inverse), std::move(d));
}

Lattice lattice_new(const Mat& basis) { return Lattice::create(basis); }

TorusPoint reduce_point(const RatVec& x, const Lattice& lattice) {
    if (x.size() != lattice.dim())
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match lattice");
    RatVec coords = lattice.to_coords(x);
    for (Rat& c : coords) c = c.frac();
    return TorusPoint{lattice.from_coords(coords), lattice};
}

RationalSimplex RationalSimplex::create(std::vector<RatVec> vertices) {
    if (vertices.empty())
        throw Error(ErrorCode::DegenerateImage, "simplex needs at least one vertex");
    const std::size_t n = vertices[0].size();
    for (const RatVec& v : vertices)
        if (v.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "simplex vertices of mixed dimension");
    if (vertices.size() > n + 1)
        throw Error(ErrorCode::DegenerateImage, "more vertices than ambient dimension allows");
    RationalSimplex s(std::move(vertices));
    if (rank(s.edge_matrix()) != s.dim())
        throw Error(ErrorCode::DegenerateImage, "affinely dependent simplex vertices");
    return s;
}

RatVec RationalSimplex::barycenter() const {
    RatVec b(ambient_dim());
    for (const RatVec& v : vertices_) b = vec_add(b, v);
    Rat inv_count = Rat(1, static_cast<long>(vertices_.size()));
    return vec_scale(inv_count, b);
}

RationalSimplex RationalSimplex::translated(const RatVec& offset) const {
    std::vector<RatVec> vs;
    vs.reserve(vertices_.size());
    for (const RatVec& v : vertices_) vs.push_back(vec_add(v, offset));
    return RationalSimplex(std::move(vs));
}

Mat RationalSimplex::edge_matrix() const {
    Mat m(dim(), ambient_dim());
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        for (std::size_t j = 0; j < ambient_dim(); ++j)
            m.at(i - 1, j) = vertices_[i][j] - vertices_[0][j];
    return m;
}

namespace {

mpz_class int_det(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int parity = 1;
    for (std::size_t s = 0; s + 1 < n; ++s) {
        std::size_t pivot = s;
        while (pivot < n && sgn(m[pivot][s]) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != s) { std::swap(m[pivot], m[s]); parity = -parity; }
        for (std::size_t r = s + 1; r < n; ++r) {
            for (std::size_t c = s + 1; c < n; ++c) {
                mpz_class v = m[s][s] * m[r][c] - m[r][s] * m[s][c];
                mpz_divexact(m[r][c].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m[r][s] = 0;
        }
        prev = m[s][s];
    }
    return parity < 0 ? mpz_class(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

void minor_gcd_rec(const std::vector<std::vector<mpz_class>>& w, std::size_t d, std::size_t n,
                   std::size_t next, std::vector<std::size_t>& chosen, mpz_class& g) {
    if (chosen.size() == d) {
        std::vector<std::vector<mpz_class>> sub(d, std::vector<mpz_class>(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) sub[i][j] = w[i][chosen[j]];
        mpz_class dd = int_det(std::move(sub));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dd.get_mpz_t());
        return;
    }
    for (std::size_t c = next; c + (d - chosen.size()) <= n; ++c) {
        chosen.push_back(c);
        minor_gcd_rec(w, d, n, c + 1, chosen, g);
        chosen.pop_back();
        if (g == 1) return;  // gcd can't shrink further
    }
}

}  // namespace

Rat normalized_volume(const RationalSimplex& simplex) {
    const std::size_t d = simplex.dim();
    if (d == 0) return Rat(1);
    const std::size_t n = simplex.ambient_dim();
    Mat edges = simplex.edge_matrix();

    // Uniformly scale the edge matrix to integers; with W integral of rank
    // d, d!·vol equals the gcd of all maximal minors (the d-th
    // determinantal divisor, i.e. the index of the row span inside its
    // saturation times the unit cell).
    mpz_class scale = 1;
    for (const Rat& r : edges.a) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), r.den().get_mpz_t());
    std::vector<std::vector<mpz_class>> w(d, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& r = edges.at(i, j);
            w[i][j] = r.num() * (scale / r.den());
        }
    mpz_class g = 0;
    std::vector<std::size_t> chosen;
    minor_gcd_rec(w, d, n, 0, chosen, g);

    mpz_class d_factorial;
    mpz_fac_ui(d_factorial.get_mpz_t(), static_cast<unsigned long>(d));
    mpz_class scale_pow;
    mpz_pow_ui(scale_pow.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(d));
    return Rat(std::move(g), mpz_class(d_factorial * scale_pow));
}

Rat covolume_ratio(const Lattice& a, const Lattice& b) {
    if (a.dim() != b.dim())
        throw Error(ErrorCode::DimensionMismatch, "covolume ratio of lattices of different rank");
    return a.covolume() / b.covolume();
}

RatVec AffineMap::apply(const RatVec& x) const {
    return vec_add(mat_apply(linear, x), translation);
}

RationalSimplex apply_affine(const AffineMap& map, const RationalSimplex& simplex) {
    std::vector<RatVec> images;
    images.reserve(simplex.vertices().size());
    for (const RatVec& v : simplex.vertices()) images.push_back(map.apply(v));
    return RationalSimplex::create(std::move(images));
}

std::optional<RatVec> barycentric_coords(const RationalSimplex& simplex, const RatVec& p) {
    const std::size_t n = simplex.ambient_dim();
    if (p.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match simplex");
    const std::size_t k = simplex.vertices().size();
    Mat A(n + 1, k);
    RatVec b(n + 1);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n; ++i) A.at(i, j) = simplex.vertices()[j][i];
        A.at(n, j) = Rat(1);
    }
    for (std::size_t i = 0; i < n; ++i) b[i] = p[i];
    b[n] = Rat(1);
    return solve_any(A, b);
}

bool simplex_contains(const RationalSimplex& simplex, const RatVec& p) {
    auto coords = barycentric_coords(simplex, p);
    if (!coords) return false;
    return std::all_of(coords->begin(), coords->end(), [](const Rat& c) { return c.sign() >= 0; });
}

Mat span_lattice_basis(const RationalSimplex& simplex) {
    return saturation_basis(simplex.edge_matrix());
}

bool simplex_contains_simplex(const RationalSimplex& outer, const RationalSimplex& inner) {
    for (const RatVec& v : inner.vertices())
        if (!simplex_contains(outer, v)) return false;
    return true;
}

namespace {

// Equality constraints for points of P ∩ (Q + shift) in joint barycentric
// coordinates (a over P's vertices, b over Q's): Σa = 1, Σb = 1,
// Σ a_k v_k − Σ b_l (w_l + shift) = 0.
struct OverlapSystem {
    Mat A;
    RatVec rhs;
    std::size_t pa, qb;  // counts of a- and b-variables
};

OverlapSystem overlap_system(const RationalSimplex& P, const RationalSimplex& Q,
                             const RatVec& shift) {
    const std::size_t n = P.ambient_dim();
    if (Q.ambient_dim() != n || shift.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "overlap query dimension mismatch");
    const std::size_t pa = P.vertices().size(), qb = Q.vertices().size();
    OverlapSystem s{Mat(n + 2, pa + qb), RatVec(n + 2, Rat(0)), pa, qb};
    for (std::size_t k = 0; k < pa; ++k) {
        s.A.at(0, k) = Rat(1);
        for (std::size_t i = 0; i < n; ++i) s.A.at(2 + i, k) = P.vertices()[k][i];
    }
    for (std::size_t l = 0; l < qb; ++l) {
        s.A.at(1, pa + l) = Rat(1);
        for (std::size_t i = 0; i < n; ++i)
            s.A.at(2 + i, pa + l) = -(Q.vertices()[l][i] + shift[i]);
    }
    s.rhs[0] = Rat(1);
    s.rhs[1] = Rat(1);
    return s;
}

}  // namespace

namespace {

struct Interval {
    Rat lo, hi;
};

Interval interval_of(const RationalSimplex& s, const Rat& shift) {
    Interval out{s.vertices()[0][0] + shift, s.vertices()[0][0] + shift};
    for (const RatVec& v : s.vertices()) {
        Rat x = v[0] + shift;
        if (x < out.lo) out.lo = x;
        if (x > out.hi) out.hi = x;
    }
    return out;
}

}  // namespace

std::optional<std::pair<Rat, Rat>> affine_range_on_overlap(const RationalSimplex& P,
                                                           const RationalSimplex& Q,
                                                           const RatVec& shift,
                                                           const RatVec& grad, const Rat& c) {
    if (P.ambient_dim() == 1 && Q.ambient_dim() == 1 && shift.size() == 1) {
        Interval a = interval_of(P, Rat(0));
        Interval b = interval_of(Q, shift[0]);
        Rat lo = a.lo > b.lo ? a.lo : b.lo;
        Rat hi = a.hi < b.hi ? a.hi : b.hi;
        if (lo > hi) return std::nullopt;
        Rat at_lo = grad[0] * lo + c;
        Rat at_hi = grad[0] * hi + c;
        return at_lo <= at_hi ? std::make_pair(at_lo, at_hi) : std::make_pair(at_hi, at_lo);
    }
    OverlapSystem s = overlap_system(P, Q, shift);
    RatVec obj(s.pa + s.qb, Rat(0));
    for (std::size_t k = 0; k < s.pa; ++k) obj[k] = dot(grad, P.vertices()[k]);
    LPResult hi = lp_maximize(s.A, s.rhs, obj);
    if (hi.status == LPStatus::Infeasible) return std::nullopt;
    for (auto& v : obj) v = -v;
    LPResult lo = lp_maximize(s.A, s.rhs, obj);
    // both bounded: the feasible set is a polytope
    return std::make_pair(-lo.value + c, hi.value + c);
}

bool relint_overlap(const RationalSimplex& P, const RationalSimplex& Q, const RatVec& shift) {
    if (P.ambient_dim() == 1 && Q.ambient_dim() == 1 && shift.size() == 1) {
        Interval a = interval_of(P, Rat(0));
        Interval b = interval_of(Q, shift[0]);
        bool a_pt = a.lo == a.hi, b_pt = b.lo == b.hi;
        if (a_pt && b_pt) return a.lo == b.lo;
        if (a_pt) return b.lo < a.lo && a.lo < b.hi;
        if (b_pt) return a.lo < b.lo && b.lo < a.hi;
        Rat lo = a.lo > b.lo ? a.lo : b.lo;
        Rat hi = a.hi < b.hi ? a.hi : b.hi;
        return lo < hi;
    }
    // Substitute a_k = s_k + t, b_l = u_l + t and maximize t; the relative
    // interiors meet exactly when the optimum is positive.
    OverlapSystem base = overlap_system(P, Q, shift);
    const std::size_t cols = base.pa + base.qb;
    Mat A(base.A.rows, cols + 1);
    for (std::size_t i = 0; i < base.A.rows; ++i) {
        Rat tcol(0);
        for (std::size_t j = 0; j < cols; ++j) {
            A.at(i, j) = base.A.at(i, j);
            tcol += base.A.at(i, j);
        }
        A.at(i, cols) = tcol;
    }
    RatVec obj(cols + 1, Rat(0));
    obj[cols] = Rat(1);
    LPResult r = lp_maximize(A, base.rhs, obj);
    return r.status == LPStatus::Optimal && r.value.sign() > 0;
}

std::vector<RatVec> candidate_translates(const RationalSimplex& fixed,
                                         const RationalSimplex& moving,
                                         const Lattice& lattice) {
    const std::size_t n = lattice.dim();
    if (fixed.ambient_dim() != n || moving.ambient_dim() != n)
        throw Error(ErrorCode::DimensionMismatch, "translate query dimension mismatch");
    std::vector<RatVec> fc, mc;
    for (const RatVec& v : fixed.vertices()) fc.push_back(lattice.to_coords(v));
    for (const RatVec& v : moving.vertices()) mc.push_back(lattice.to_coords(v));

    std::vector<long> lo(n), hi(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rat fmin = fc[0][k], fmax = fc[0][k];
        for (const auto& v : fc) {
            if (v[k] < fmin) fmin = v[k];
            if (v[k] > fmax) fmax = v[k];
        }
        Rat mmin = mc[0][k], mmax = mc[0][k];
        for (const auto& v : mc) {
            if (v[k] < mmin) mmin = v[k];
            if (v[k] > mmax) mmax = v[k];
        }
        // moving+γ touches fixed in coordinate k iff γ_k ∈ [fmin−mmax, fmax−mmin]
        mpz_class lo_z = -((mmax - fmin).floor());
        mpz_class hi_z = (fmax - mmin).floor();
        if (!lo_z.fits_slong_p() || !hi_z.fits_slong_p())
            throw Error(ErrorCode::ValidationFailed, "translate range too large to enumerate");
        lo[k] = lo_z.get_si();
        hi[k] = hi_z.get_si();
        if (lo[k] > hi[k]) return {};
    }

    std::vector<RatVec> out;
    RatVec m(n, Rat(0));
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t w = static_cast<std::size_t>(hi[k] - lo[k] + 1);
        if (total > 100000 / w)
            throw Error(ErrorCode::ValidationFailed, "translate enumeration too large");
        total *= w;
    }
    std::vector<long> cur(n);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t k = 0; k < n; ++k) {
            long w = hi[k] - lo[k] + 1;
            cur[k] = lo[k] + static_cast<long>(rem % static_cast<std::size_t>(w));
            rem /= static_cast<std::size_t>(w);
        }
        for (std::size_t k = 0; k < n; ++k) m[k] = Rat(cur[k]);
        out.push_back(lattice.from_coords(m));
    }
    return out;
}

}  // namespace troph
