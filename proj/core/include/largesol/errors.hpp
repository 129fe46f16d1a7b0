#pragma once

#include <stdexcept>
#include <string>

namespace largesol {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters (or initial data) outside the range where a computation is defined.
/// `condition()` names the violated inequality in plain mathematical form.
class DomainError : public Error {
public:
    DomainError(std::string condition, const std::string& detail)
        : Error(condition + ": " + detail), condition_(std::move(condition)) {}
    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

/// Any failure of a numerical integration or extrapolation.
class IntegrationError : public Error {
public:
    using Error::Error;
};

/// Picard iterates near r = 0 failed to contract.
class ContractionError : public IntegrationError {
public:
    using IntegrationError::IntegrationError;
};

/// A component left the positive cone beyond round-off tolerance.
class NegativityError : public IntegrationError {
public:
    NegativityError(const std::string& what, double r, double value)
        : IntegrationError(what), r_(r), value_(value) {}
    double radius() const noexcept { return r_; }
    double value() const noexcept { return value_; }

private:
    double r_;
    double value_;
};

/// Successive blow-up estimates do not settle.
class NonConvergenceError : public IntegrationError {
public:
    using IntegrationError::IntegrationError;
};

/// A computed object contradicts a structural property that holds under the
/// stated hypotheses (for example the sign pattern of a linearization).
class StructureViolation : public Error {
public:
    using Error::Error;
};

}  // namespace largesol
