#pragma once

#include "troph/linalg.hpp"

namespace troph {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rat value;     // objective at the optimum, valid when Optimal
    RatVec point;  // a primal optimum, valid when Optimal
};

/// Maximizes c·x subject to A x = b, x ≥ 0, over exact rationals.
/// Two-phase simplex with Bland's rule, so it terminates on every input.
LPResult lp_maximize(const Mat& A, const RatVec& b, const RatVec& c);

}  // namespace troph
