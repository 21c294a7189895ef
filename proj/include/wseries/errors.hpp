#pragma once

#include <stdexcept>
#include <string>

namespace wseries {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

// Requested index exceeds a configured table bound.
struct CapacityError : Error {
    using Error::Error;
};

// Iterative solver failed to converge; message carries the iteration trace.
struct SolverError : Error {
    using Error::Error;
};

struct UsageError : Error {
    using Error::Error;
};

} // namespace wseries
