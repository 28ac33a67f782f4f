// error.hpp: numerical failure types
//
// Precondition violations throw std::invalid_argument. The types below signal
// numerical outcomes a caller may want to branch on; name() is the stable
// identifier printed by the CLI.

#pragma once

#include <stdexcept>
#include <string>

namespace aptf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    [[nodiscard]] virtual const char* name() const noexcept { return "Error"; }
};

/// Null space of a steady-state problem is empty or more than one-dimensional.
class DegenerateKernelError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* name() const noexcept override { return "DegenerateKernel"; }
};

/// Post-selected sector carries no probability (norm below 1e-300).
class FullyDissipatedError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* name() const noexcept override { return "FullyDissipated"; }
};

/// Two independent evaluation routes disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* name() const noexcept override { return "Consistency"; }
};

/// A numerical route is unavailable for this input (e.g. defective matrix).
class NumericalError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* name() const noexcept override { return "Numerical"; }
};

/// Measurement data admit more than one solution.
class AmbiguousFitError : public Error {
public:
    using Error::Error;
    [[nodiscard]] const char* name() const noexcept override { return "AmbiguousFit"; }
};

}  // namespace aptf
