#include "troph/errors.hpp"

namespace troph {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SingularLattice: return "singular_lattice";
        case ErrorCode::DimensionMismatch: return "dimension_mismatch";
        case ErrorCode::DegenerateImage: return "degenerate_image";
        case ErrorCode::DegenerateStratum: return "degenerate_stratum";
        case ErrorCode::OutsideSupport: return "outside_support";
        case ErrorCode::NotContained: return "not_contained";
        case ErrorCode::RefinementUnsupported: return "refinement_unsupported";
        case ErrorCode::OrbitBudgetExceeded: return "orbit_budget_exceeded";
        case ErrorCode::UnstableComplex: return "unstable_complex";
        case ErrorCode::SingularSystem: return "singular_system";
        case ErrorCode::ValidationFailed: return "validation_failed";
        case ErrorCode::ParseError: return "parse_error";
    }
    return "unknown";
}

int error_exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
            return 5;
        case ErrorCode::OrbitBudgetExceeded:
            return 4;
        case ErrorCode::RefinementUnsupported:
        case ErrorCode::NotContained:
            return 3;
        default:
            return 2;
    }
}

}  // namespace troph
