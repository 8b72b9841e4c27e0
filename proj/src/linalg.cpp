#include "troph/linalg.hpp"

#include <algorithm>
#include <cstdlib>

#include "troph/errors.hpp"

namespace troph {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
}

Mat Mat::from_rows(const std::vector<RatVec>& rows) {
    Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols)
            throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RatVec Mat::row(std::size_t i) const {
    return RatVec(a.begin() + static_cast<std::ptrdiff_t>(i * cols),
                  a.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
}

Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Mat out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                out.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return out;
}

RatVec mat_apply(const Mat& m, const RatVec& x) {
    if (m.cols != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
    RatVec out(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out[i] += m.at(i, j) * x[j];
    return out;
}

RatVec row_times_mat(const RatVec& x, const Mat& m) {
    if (m.rows != x.size()) throw Error(ErrorCode::DimensionMismatch, "vector-matrix shape mismatch");
    RatVec out(m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out[j] += x[i] * m.at(i, j);
    return out;
}

RatVec vec_add(const RatVec& x, const RatVec& y) {
    if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum shape mismatch");
    RatVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

RatVec vec_sub(const RatVec& x, const RatVec& y) {
    if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference shape mismatch");
    RatVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
    return out;
}

RatVec vec_scale(const Rat& c, const RatVec& x) {
    RatVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = c * x[i];
    return out;
}

Rat dot(const RatVec& x, const RatVec& y) {
    if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "dot product shape mismatch");
    Rat out;
    for (std::size_t i = 0; i < x.size(); ++i) out += x[i] * y[i];
    return out;
}

namespace {

// Integer matrix with the per-row denominator scale factored out, so the
// fraction-free (Bareiss) passes run over mpz.
struct ClearedRows {
    std::vector<std::vector<mpz_class>> m;
    mpz_class row_scale_product = 1;
};

ClearedRows clear_denominators(const Mat& in, const RatVec* rhs) {
    ClearedRows out;
    out.m.assign(in.rows, std::vector<mpz_class>(in.cols + (rhs ? 1 : 0)));
    for (std::size_t i = 0; i < in.rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < in.cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), in.at(i, j).den().get_mpz_t());
        if (rhs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*rhs)[i].den().get_mpz_t());
        for (std::size_t j = 0; j < in.cols; ++j)
            out.m[i][j] = in.at(i, j).num() * (l / in.at(i, j).den());
        if (rhs) out.m[i][in.cols] = (*rhs)[i].num() * (l / (*rhs)[i].den());
        out.row_scale_product *= l;
    }
    return out;
}

// Smallest-magnitude nonzero entry in the trailing submatrix; keeps the
// Bareiss intermediates small.
bool find_pivot(const std::vector<std::vector<mpz_class>>& m, std::size_t start,
                std::size_t col_limit, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    for (std::size_t i = start; i < m.size(); ++i)
        for (std::size_t j = start; j < col_limit; ++j) {
            if (sgn(m[i][j]) == 0) continue;
            if (!found || mpz_cmpabs(m[i][j].get_mpz_t(), m[pi][pj].get_mpz_t()) < 0) {
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

}  // namespace

Rat det(const Mat& in) {
    if (in.rows != in.cols) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    const std::size_t n = in.rows;
    if (n == 0) return Rat(1);
    ClearedRows cleared = clear_denominators(in, nullptr);
    auto& m = cleared.m;
    int parity = 1;
    mpz_class prev = 1;
    for (std::size_t s = 0; s + 1 < n; ++s) {
        std::size_t pi = s, pj = s;
        if (!find_pivot(m, s, n, pi, pj)) return Rat(0);
        if (pi != s) { std::swap(m[pi], m[s]); parity = -parity; }
        if (pj != s) {
            for (std::size_t i = 0; i < n; ++i) std::swap(m[i][pj], m[i][s]);
            parity = -parity;
        }
        for (std::size_t r = s + 1; r < n; ++r) {
            for (std::size_t c = s + 1; c < n; ++c) {
                mpz_class v = m[s][s] * m[r][c] - m[r][s] * m[s][c];
                mpz_divexact(m[r][c].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m[r][s] = 0;
        }
        prev = m[s][s];
    }
    mpz_class d = m[n - 1][n - 1];
    if (parity < 0) d = -d;
    return Rat(std::move(d), std::move(cleared.row_scale_product));
}

std::optional<RatVec> solve_square(const Mat& A, const RatVec& b) {
    if (A.rows != A.cols || A.rows != b.size())
        throw Error(ErrorCode::DimensionMismatch, "square solve shape mismatch");
    const std::size_t n = A.rows;
    if (n == 0) return RatVec{};
    ClearedRows cleared = clear_denominators(A, &b);
    auto& m = cleared.m;
    std::vector<std::size_t> col_of(n);
    for (std::size_t j = 0; j < n; ++j) col_of[j] = j;
    mpz_class prev = 1;
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t pi = s, pj = s;
        if (!find_pivot(m, s, n, pi, pj)) return std::nullopt;
        if (pi != s) std::swap(m[pi], m[s]);
        if (pj != s) {
            for (std::size_t i = 0; i < n; ++i) std::swap(m[i][pj], m[i][s]);
            std::swap(col_of[pj], col_of[s]);
        }
        for (std::size_t r = s + 1; r < n; ++r) {
            for (std::size_t c = s + 1; c <= n; ++c) {
                mpz_class v = m[s][s] * m[r][c] - m[r][s] * m[s][c];
                mpz_divexact(m[r][c].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m[r][s] = 0;
        }
        prev = m[s][s];
    }
    RatVec y(n), x(n);
    for (std::size_t si = n; si-- > 0;) {
        Rat acc(mpz_class(m[si][n]), mpz_class(1));
        for (std::size_t c = si + 1; c < n; ++c)
            acc -= Rat(mpz_class(m[si][c]), mpz_class(1)) * y[c];
        y[si] = acc / Rat(mpz_class(m[si][si]), mpz_class(1));
    }
    for (std::size_t s = 0; s < n; ++s) x[col_of[s]] = y[s];
    return x;
}

std::size_t rank(Mat m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t pivot = r;
        while (pivot < m.rows && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            if (m.at(i, col).is_zero()) continue;
            Rat f = m.at(i, col) / m.at(r, col);
            for (std::size_t j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

std::optional<RatVec> solve_any(const Mat& A, const RatVec& b) {
    if (A.rows != b.size()) throw Error(ErrorCode::DimensionMismatch, "solve shape mismatch");
    Mat m(A.rows, A.cols + 1);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
        m.at(i, A.cols) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < A.cols && r < m.rows; ++col) {
        std::size_t pivot = r;
        while (pivot < m.rows && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j <= A.cols; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        Rat inv = m.at(r, col).reciprocal();
        for (std::size_t j = col; j <= A.cols; ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, col).is_zero()) continue;
            Rat f = m.at(i, col);
            for (std::size_t j = col; j <= A.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < m.rows; ++i)
        if (!m.at(i, A.cols).is_zero()) return std::nullopt;
    RatVec x(A.cols);
    for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = m.at(k, A.cols);
    return x;
}

Mat mat_inverse(const Mat& in) {
    if (in.rows != in.cols) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = in.rows;
    Mat m(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = in.at(i, j);
        m.at(i, n + i) = Rat(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) throw Error(ErrorCode::SingularLattice, "singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
        Rat inv = m.at(col, col).reciprocal();
        for (std::size_t j = 0; j < 2 * n; ++j) m.at(col, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m.at(i, col).is_zero()) continue;
            Rat f = m.at(i, col);
            for (std::size_t j = 0; j < 2 * n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    Mat out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = m.at(i, n + j);
    return out;
}

Mat saturation_basis(const Mat& span_rows) {
    const std::size_t d = span_rows.rows, n = span_rows.cols;
    if (d > n) throw Error(ErrorCode::DimensionMismatch, "more span rows than ambient dimension");
    ClearedRows cleared = clear_denominators(span_rows, nullptr);
    auto& w = cleared.m;
    // z tracks the inverse of the accumulated column transform; its first
    // d rows end up spanning span_Q(rows) ∩ Z^n.
    std::vector<std::vector<mpz_class>> z(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) z[i][i] = 1;

    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        for (std::size_t i = 0; i < d; ++i) std::swap(w[i][c1], w[i][c2]);
        std::swap(z[c1], z[c2]);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
        // col_dst -= q * col_src;  mirrored on z as row_src += q * row_dst
        for (std::size_t i = 0; i < d; ++i) w[i][dst] -= q * w[i][src];
        for (std::size_t c = 0; c < n; ++c) z[src][c] += q * z[dst][c];
    };

    for (std::size_t k = 0; k < d; ++k) {
        for (;;) {
            std::size_t pi = k, pj = k;
            if (!find_pivot(w, k, n, pi, pj))
                throw Error(ErrorCode::DegenerateImage, "rank-deficient span in saturation");
            if (pi != k) std::swap(w[pi], w[k]);
            if (pj != k) swap_cols(pj, k);
            bool clean = true;
            for (std::size_t r = k + 1; r < d; ++r) {
                if (sgn(w[r][k]) == 0) continue;
                mpz_class q = w[r][k] / w[k][k];
                if (sgn(q) != 0)
                    for (std::size_t c = k; c < n; ++c) w[r][c] -= q * w[k][c];
                if (sgn(w[r][k]) != 0) clean = false;
            }
            for (std::size_t c = k + 1; c < n; ++c) {
                if (sgn(w[k][c]) == 0) continue;
                mpz_class q = w[k][c] / w[k][k];
                if (sgn(q) != 0) add_col(c, k, q);
                if (sgn(w[k][c]) != 0) clean = false;
            }
            if (clean) break;
        }
    }
    Mat out(d, n);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = Rat(mpz_class(z[i][j]), mpz_class(1));
    return out;
}

}  // namespace troph
