#pragma once

#include <utility>

#include "troph/errors.hpp"

namespace troph_test {

// True iff f() throws troph::Error with exactly the given code.
template <class F>
bool throws_code(troph::ErrorCode code, F&& f) {
    try {
        std::forward<F>(f)();
    } catch (const troph::Error& e) {
        return e.code() == code;
    } catch (...) {
        return false;
    }
    return false;
}

}  // namespace troph_test
