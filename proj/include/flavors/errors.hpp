#pragma once

#include <stdexcept>
#include <string>

namespace flavors {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on numeric parameters failed (non-positive step, bad N, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Micro step h is not strictly smaller than the macro step H.
class DegenerateSteps : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// L/K or T/H is not an integer.
class NonDivisible : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Two space-time fields do not share a nested grid.
class MeshMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class EmptyVector : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A state went NaN/Inf or exceeded the blow-up guard during integration.
class NonFinite : public Error {
public:
    NonFinite(const std::string& what, double time) : Error(what), time_(time) {}

    /// Time at the start of the step that blew up.
    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace flavors
