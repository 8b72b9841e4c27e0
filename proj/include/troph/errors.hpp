#pragma once

#include <stdexcept>
#include <string>

namespace troph {

// Machine-readable failure categories. The CLI maps these onto process
// exit codes: validation-type failures -> 2, refinement limits -> 3,
// budget exhaustion -> 4, parse errors -> 5.
enum class ErrorCode {
    SingularLattice,
    DimensionMismatch,
    DegenerateImage,
    DegenerateStratum,
    OutsideSupport,
    NotContained,
    RefinementUnsupported,
    OrbitBudgetExceeded,
    UnstableComplex,
    SingularSystem,
    ValidationFailed,
    ParseError,
};

const char* error_code_name(ErrorCode code);

int error_exit_code(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace troph
