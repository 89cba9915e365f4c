#pragma once

#include <stdexcept>
#include <string>

namespace bcva {

/// Raised when an input violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine cannot deliver a result of the requested quality
/// (quadrature that does not converge, Monte Carlo samples that are not finite).
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool condition, const std::string& message) {
    if (!condition) throw InvalidArgument(message);
}
}  // namespace detail

}  // namespace bcva
