#pragma once

#include <stdexcept>

namespace radlab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid input: malformed JSON, hypothesis violations, bad arguments.
struct InputError : Error {
    using Error::Error;
};

/// Numerical failure: step-size underflow, divergent iteration, failed fit.
struct NumericalError : Error {
    using Error::Error;
};

} // namespace radlab
