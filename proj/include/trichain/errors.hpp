// errors.hpp — Exception types thrown by the solvers and the CLI layer.

#pragma once

#include <stdexcept>
#include <string>

namespace trichain {

// Invalid physical parameters (negative temperature, k < 0, ...).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Response matrix not invertible at a real frequency (only possible at
// gamma = 0 on resonance).
struct SingularResponseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive integration failed to reach the requested tolerance.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A root of det F lies in the closed upper half plane: no stationary state.
struct UnstableParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Roots of det F too close to be treated as simple by the residue sums.
struct RootMultiplicityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A solver produced a covariance matrix violating the physicality bound.
struct PhysicalityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad sweep / CLI configuration (maps to exit code 2 in the CLI).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace trichain
