#pragma once

#include <stdexcept>
#include <string>

namespace clausen {

// Error hierarchy shared by all modules. Everything derives from Error so
// callers (and the CLI) can distinguish "bad input" from "computation failed".
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// argument outside the admissible region of an evaluation routine
struct DomainError : Error {
    using Error::Error;
};

// Gamma (or a Gamma-carrying formula) evaluated within 1e-12 of a pole
struct PoleError : DomainError {
    using DomainError::DomainError;
};

// quadrature/series failed to contract within the allowed budget
struct NoConvergence : Error {
    using Error::Error;
};

// evaluation point too close to a singular line/point of a connection or map
struct SingularLocus : DomainError {
    using DomainError::DomainError;
};

// path violates its declared clearance tube
struct SingularProximity : DomainError {
    using DomainError::DomainError;
};

// adaptive ODE controller stalled
struct StepUnderflow : Error {
    using Error::Error;
};

// integer signature constraint failed; `which` names the violated constraint
struct ConstraintViolation : DomainError {
    std::string which;
    explicit ConstraintViolation(const std::string& w)
        : DomainError("constraint violated: " + w), which(w) {}
};

// an exact certificate reduced to a nonzero polynomial
struct VerificationFailed : Error {
    using Error::Error;
};

// a substitution produced an identically-zero denominator
struct DivisionByZeroPoly : Error {
    using Error::Error;
};

} // namespace clausen
