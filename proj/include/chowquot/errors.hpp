// Exception types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace chowquot {

// Thrown when an exact computation would exceed the configured magnitude
// guard. Arbitrary-precision arithmetic cannot wrap around, so this only
// fires on inputs (or intermediate growth) past the guard.
struct ArithmeticOverflowError : std::runtime_error {
    explicit ArithmeticOverflowError(const std::string& what)
        : std::runtime_error(what) {}
};

// A stratum request whose support misses an entire factor.
struct InvalidStratumError : std::invalid_argument {
    explicit InvalidStratumError(const std::string& what)
        : std::invalid_argument(what) {}
};

// A coordinate support pattern incompatible with the defining equation.
struct UnrealizableSupportError : std::invalid_argument {
    explicit UnrealizableSupportError(const std::string& what)
        : std::invalid_argument(what) {}
};

// Dimension or scale guards on the polyhedral routines.
struct ScaleGuardError : std::invalid_argument {
    explicit ScaleGuardError(const std::string& what)
        : std::invalid_argument(what) {}
};

}  // namespace chowquot
