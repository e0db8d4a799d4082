#pragma once

#include <stdexcept>
#include <string>

namespace modext {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in spaces of different shape (field, ambient dimension, ...).
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed input: non-prime modulus, out-of-range entries, bad shapes in files.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The request is well formed but excluded by the theory, e.g. forging an
/// unextendable isometry over an alphabet that has the extension property.
class DomainRejection : public Error {
public:
    using Error::Error;
};

/// A pair of codes was expected to be Hamming-isometric and is not.
class NotAnIsometry : public Error {
public:
    using Error::Error;
};

/// No homomorphism with the requested kernel fits into the target alphabet.
class RankInfeasible : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

}  // namespace modext
