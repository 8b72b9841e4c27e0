#include "troph/lp.hpp"

#include <cstddef>

#include "troph/errors.hpp"

namespace troph {

namespace {

// Dense tableau: rows 0..m-1 are constraints, row m is the objective in
// reduced-cost form (positive entry = improving column); column n is the
// right-hand side. The objective value is -row[m][n].
struct Tableau {
    std::size_t m = 0, n = 0;
    std::vector<RatVec> row;
    std::vector<std::size_t> basis;  // basic column per constraint row

    Rat& at(std::size_t i, std::size_t j) { return row[i][j]; }
};

void pivot(Tableau& t, std::size_t pr, std::size_t pc) {
    Rat inv = t.at(pr, pc).reciprocal();
    for (auto& v : t.row[pr]) v *= inv;
    for (std::size_t i = 0; i <= t.m; ++i) {
        if (i == pr) continue;
        Rat f = t.at(i, pc);
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j <= t.n; ++j) t.at(i, j) -= f * t.row[pr][j];
    }
    t.basis[pr] = pc;
}

// Bland's rule: lowest-index improving column enters; among the tightest
// ratios the row whose basic variable has the lowest index leaves.
LPStatus iterate(Tableau& t) {
    for (;;) {
        std::size_t enter = t.n;
        for (std::size_t j = 0; j < t.n; ++j)
            if (t.at(t.m, j).sign() > 0) {
                enter = j;
                break;
            }
        if (enter == t.n) return LPStatus::Optimal;
        std::size_t leave = t.m;
        Rat best;
        for (std::size_t i = 0; i < t.m; ++i) {
            if (t.at(i, enter).sign() <= 0) continue;
            Rat ratio = t.at(i, t.n) / t.at(i, enter);
            if (leave == t.m || ratio < best ||
                (ratio == best && t.basis[i] < t.basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == t.m) return LPStatus::Unbounded;
        pivot(t, leave, enter);
    }
}

}  // namespace

LPResult lp_maximize(const Mat& A, const RatVec& b, const RatVec& c) {
    const std::size_t m = A.rows, n = A.cols;
    if (b.size() != m || c.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "lp_maximize: shape mismatch");

    // Phase 1: minimize the sum of artificial variables.
    Tableau t;
    t.m = m;
    t.n = n + m;
    t.row.assign(m + 1, RatVec(t.n + 1, Rat(0)));
    t.basis.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        Rat s = b[i].sign() < 0 ? Rat(-1) : Rat(1);
        for (std::size_t j = 0; j < n; ++j) t.at(i, j) = s * A.at(i, j);
        t.at(i, n + i) = Rat(1);
        t.at(i, t.n) = s * b[i];
        t.basis[i] = n + i;
    }
    // Reduced costs of maximizing -(sum of artificials) after pricing out
    // the artificial basis: column sums over the constraint rows.
    for (std::size_t j = 0; j < n; ++j) {
        Rat s(0);
        for (std::size_t i = 0; i < m; ++i) s += t.at(i, j);
        t.at(m, j) = s;
    }
    Rat rhs_sum(0);
    for (std::size_t i = 0; i < m; ++i) rhs_sum += t.at(i, t.n);
    t.at(m, t.n) = rhs_sum;

    iterate(t);
    if (!t.at(m, t.n).is_zero()) return {LPStatus::Infeasible, Rat(0), {}};

    // Drive leftover artificials out of the basis; a row with no eligible
    // pivot is a redundant constraint and is dropped.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < n) {
            keep.push_back(i);
            continue;
        }
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (!t.at(i, j).is_zero()) {
                col = j;
                break;
            }
        if (col < n) {
            pivot(t, i, col);
            keep.push_back(i);
        }
    }

    // Phase 2 over the original columns only.
    Tableau p;
    p.m = keep.size();
    p.n = n;
    p.row.assign(p.m + 1, RatVec(n + 1, Rat(0)));
    p.basis.assign(p.m, 0);
    for (std::size_t r = 0; r < keep.size(); ++r) {
        for (std::size_t j = 0; j < n; ++j) p.at(r, j) = t.at(keep[r], j);
        p.at(r, n) = t.at(keep[r], t.n);
        p.basis[r] = t.basis[keep[r]];
    }
    for (std::size_t j = 0; j < n; ++j) p.at(p.m, j) = c[j];
    p.at(p.m, n) = Rat(0);
    for (std::size_t r = 0; r < p.m; ++r) {
        Rat f = p.at(p.m, p.basis[r]);
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j <= n; ++j) p.at(p.m, j) -= f * p.row[r][j];
    }

    LPStatus st = iterate(p);
    if (st == LPStatus::Unbounded) return {LPStatus::Unbounded, Rat(0), {}};

    LPResult out;
    out.status = LPStatus::Optimal;
    out.value = -p.at(p.m, n);
    out.point.assign(n, Rat(0));
    for (std::size_t r = 0; r < p.m; ++r) out.point[p.basis[r]] = p.at(r, n);
    return out;
}

}  // namespace troph
