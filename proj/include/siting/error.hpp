#pragma once

#include <stdexcept>
#include <string>

namespace siting {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Value outside the mathematical domain of an operation (negative TFN bound,
/// nonpositive priority, empty matrix, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input document (survey, registry, site table,
/// linguistic scale, weight document).
class InputError : public Error {
public:
    using Error::Error;
};

/// Lookup of a name that does not exist (linguistic term, criterion code).
class LookupError : public InputError {
public:
    using InputError::InputError;
};

/// The optimizer failed on a model that should be solvable. Carries the model
/// listing so it can be reproduced in another solver.
class SolverError : public Error {
public:
    SolverError(const std::string& what, std::string model_dump)
        : Error(what), model_dump_(std::move(model_dump)) {}

    const std::string& model_dump() const noexcept { return model_dump_; }

private:
    std::string model_dump_;
};

/// Broken internal invariant.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace siting
