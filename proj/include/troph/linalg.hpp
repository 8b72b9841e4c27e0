#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "troph/rat.hpp"

namespace troph {

using RatVec = std::vector<Rat>;

/// Dense row-major matrix of exact rationals. Sizes here are tiny
/// (ambient dimensions and cell counts), so no sparsity games.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rat> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<RatVec>& rows);

    Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    RatVec row(std::size_t i) const;

    bool operator==(const Mat& o) const = default;
};

Mat mat_mul(const Mat& x, const Mat& y);
RatVec mat_apply(const Mat& m, const RatVec& x);      // m * x (column vector)
RatVec row_times_mat(const RatVec& x, const Mat& m);  // x * m (row vector)

RatVec vec_add(const RatVec& x, const RatVec& y);
RatVec vec_sub(const RatVec& x, const RatVec& y);
RatVec vec_scale(const Rat& c, const RatVec& x);
Rat dot(const RatVec& x, const RatVec& y);

/// Exact determinant (fraction-free Bareiss after clearing denominators).
Rat det(const Mat& m);

std::size_t rank(Mat m);

/// Solves the square system A x = b by fraction-free Gaussian elimination
/// with full pivoting. Returns nullopt when A is singular.
std::optional<RatVec> solve_square(const Mat& A, const RatVec& b);

/// Solves a general (possibly non-square) system exactly; free variables
/// are set to zero. Returns nullopt when the system is inconsistent.
std::optional<RatVec> solve_any(const Mat& A, const RatVec& b);

Mat mat_inverse(const Mat& m);  // throws Error(SingularLattice) on singular input

/// Basis of the saturation lattice span_Q(rows) ∩ Z^n for a full-row-rank
/// rational matrix; returned as a rank x n integer matrix (entries are
/// integral Rats). Uses Smith reduction over Z.
Mat saturation_basis(const Mat& span_rows);

}  // namespace troph
