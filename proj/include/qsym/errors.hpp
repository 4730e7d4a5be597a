#pragma once

#include <stdexcept>

namespace qsym {

// Error taxonomy mirrored by CLI exit codes: precondition 2, numerical 3, cap 4.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qsym
