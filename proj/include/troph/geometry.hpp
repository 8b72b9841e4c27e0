#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "troph/linalg.hpp"
#include "troph/rat.hpp"

namespace troph {

/// Full-rank rational lattice Γ ⊂ Q^n. Basis vectors are the *rows* of
/// the basis matrix; a point x has lattice coordinates c with x = c·B.
class Lattice {
public:
    static Lattice create(Mat basis);  // throws SingularLattice on rank deficiency

    std::size_t dim() const { return basis_.rows; }
    const Mat& basis() const { return basis_; }
    Rat covolume() const { return det_.abs(); }

    RatVec to_coords(const RatVec& ambient) const { return row_times_mat(ambient, inverse_); }
    RatVec from_coords(const RatVec& coords) const { return row_times_mat(coords, basis_); }

    bool operator==(const Lattice& o) const { return basis_ == o.basis_; }

private:
    Lattice(Mat basis, Mat inverse, Rat det)
        : basis_(std::move(basis)), inverse_(std::move(inverse)), det_(std::move(det)) {}

    Mat basis_;
    Mat inverse_;
    Rat det_;
};

Lattice lattice_new(const Mat& basis);

/// Point of the tropical torus R^n/Γ held by its canonical representative:
/// lattice-basis coordinates in [0,1)^n.
struct TorusPoint {
    RatVec ambient;
    Lattice lattice;

    RatVec coords() const { return lattice.to_coords(ambient); }
    bool operator==(const TorusPoint& o) const { return ambient == o.ambient && lattice == o.lattice; }
};

TorusPoint reduce_point(const RatVec& x, const Lattice& lattice);

/// Simplex with affinely independent rational vertices; dimension may be
/// smaller than the ambient dimension.
class RationalSimplex {
public:
    static RationalSimplex create(std::vector<RatVec> vertices);  // throws DegenerateImage

    std::size_t dim() const { return vertices_.size() - 1; }
    std::size_t ambient_dim() const { return vertices_[0].size(); }
    const std::vector<RatVec>& vertices() const { return vertices_; }
    RatVec barycenter() const;
    RationalSimplex translated(const RatVec& offset) const;

    /// Rows are edge vectors v_i - v_0.
    Mat edge_matrix() const;

    bool operator==(const RationalSimplex& o) const { return vertices_ == o.vertices_; }

private:
    explicit RationalSimplex(std::vector<RatVec> vertices) : vertices_(std::move(vertices)) {}
    std::vector<RatVec> vertices_;
};

/// Lattice-normalized volume: the affine span of the simplex carries the
/// volume form in which a fundamental cell of span ∩ Z^n has volume 1.
/// This is the unique convention making volumes of rational simplices
/// rational. A point has volume 1.
Rat normalized_volume(const RationalSimplex& simplex);

Rat covolume_ratio(const Lattice& a, const Lattice& b);

/// x -> linear·x + translation (column-vector action).
struct AffineMap {
    Mat linear;
    RatVec translation;

    RatVec apply(const RatVec& x) const;
};

RationalSimplex apply_affine(const AffineMap& map, const RationalSimplex& simplex);

/// Barycentric coordinates of p if p lies in the affine span, regardless of
/// whether it is inside the simplex.
std::optional<RatVec> barycentric_coords(const RationalSimplex& simplex, const RatVec& p);

bool simplex_contains(const RationalSimplex& simplex, const RatVec& p);

/// Integer basis (d x n) of span_Q(edges) ∩ Z^n.
Mat span_lattice_basis(const RationalSimplex& simplex);

/// True iff every vertex of inner lies in outer (hence inner ⊆ outer).
bool simplex_contains_simplex(const RationalSimplex& outer, const RationalSimplex& inner);

/// Exact range {min, max} of grad·x + c over P ∩ (Q + shift); nullopt when
/// the intersection is empty.
std::optional<std::pair<Rat, Rat>> affine_range_on_overlap(const RationalSimplex& P,
                                                           const RationalSimplex& Q,
                                                           const RatVec& shift,
                                                           const RatVec& grad, const Rat& c);

/// True iff the relative interiors of P and Q + shift share a point.
bool relint_overlap(const RationalSimplex& P, const RationalSimplex& Q, const RatVec& shift);

/// Lattice vectors γ for which the bounding boxes (in lattice coordinates)
/// of moving + γ and fixed touch or overlap. Every actual overlap between
/// torus translates of the two simplices uses one of these γ.
std::vector<RatVec> candidate_translates(const RationalSimplex& fixed,
                                         const RationalSimplex& moving, const Lattice& lattice);

}  // namespace troph
