#pragma once

#include <stdexcept>
#include <string>

namespace ppf {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad parameters, arity mismatch, wrong model tag).
class InputError : public Error {
public:
    using Error::Error;
};

/// An input object failed one of its invariants (weighting not normalized, probabilities not summing to 1, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Evaluation outside the domain of a function (gamma outside [0,1], wealth outside a utility's domain).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Closed-form approximation undefined because its denominator vanishes.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// The exact solver could not locate a stationary point.
class SolverError : public Error {
public:
    using Error::Error;
};

} // namespace ppf
