// errors.hpp — exception taxonomy shared across the workbench
//
// The CLI maps these onto exit codes: configuration problems -> 1,
// domain failures (no crossing, unreachable target) -> 2, numerical
// failures (integrator drift) -> 3.

#pragma once

#include <stdexcept>

namespace opss {

// Fock cutoff too small for the requested model.
class TruncationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An input violated a documented precondition (e.g. non-Hermitian matrix
// passed to an eigensolver that requires Hermiticity).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// No avoided crossing inside the requested bracket.
class NoCrossingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Control frequency or detuning target outside the admissible window.
class RangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A sequence arrived in the wrong control representation.
class RepresentationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Integrator failure (trace drift beyond tolerance and similar).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed run configuration (CLI layer).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace opss
