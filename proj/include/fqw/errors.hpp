#pragma once

#include <stdexcept>
#include <string>

namespace fqw {

/// Base of every error raised by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Usage / input errors.
class NotPrime : public Error { using Error::Error; };
class NotMonic : public Error { using Error::Error; };
class Reducible : public Error { using Error::Error; };
class FieldMismatch : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class ZeroC : public Error { using Error::Error; };

// Arithmetic errors.
class DivisionByZero : public Error { using Error::Error; };
class NotDivisible : public Error { using Error::Error; };
class CoefficientsNotInFixedField : public Error { using Error::Error; };

// Cost guards.
class BoundExceeded : public Error { using Error::Error; };
class BudgetExceeded : public Error { using Error::Error; };

// A theorem check failed. Either a bug in this library or a counterexample.
class EquivalenceViolation : public Error { using Error::Error; };
class TheoremViolation : public Error { using Error::Error; };

// Persistence.
class IoError : public Error { using Error::Error; };
class SchemaVersionMismatch : public Error { using Error::Error; };

} // namespace fqw
