#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unwindr {

/// Base class for every domain error raised by the library.
///
/// `name()` is a stable kebab-case identifier that the command-line tool
/// prints alongside exit code 2; the message carries the human-readable
/// detail.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define UNWINDR_DEFINE_ERROR(Type, tag)                                   \
    class Type : public Error {                                           \
    public:                                                               \
        explicit Type(const std::string& message) : Error(tag, message) {} \
    }

UNWINDR_DEFINE_ERROR(InvalidGridError, "invalid-grid");
UNWINDR_DEFINE_ERROR(AliasingError, "aliasing");
UNWINDR_DEFINE_ERROR(NonAnalyticInputError, "non-analytic-input");
UNWINDR_DEFINE_ERROR(NonFiniteInputError, "non-finite-input");
UNWINDR_DEFINE_ERROR(LengthMismatchError, "length-mismatch");
UNWINDR_DEFINE_ERROR(PointOnCurveError, "point-on-curve");
UNWINDR_DEFINE_ERROR(UnderResolvedCurveError, "under-resolved-curve");
UNWINDR_DEFINE_ERROR(InvalidWeightsError, "invalid-weights");
UNWINDR_DEFINE_ERROR(NearBoundaryRootError, "near-boundary-root");
UNWINDR_DEFINE_ERROR(BoundaryRootError, "boundary-root");
UNWINDR_DEFINE_ERROR(PreconditionError, "precondition");
UNWINDR_DEFINE_ERROR(CountMismatchError, "count-mismatch");
UNWINDR_DEFINE_ERROR(TruncationError, "truncation");

#undef UNWINDR_DEFINE_ERROR

/// Raised when |s| drops below the relative modulus floor, where log|s|
/// is no longer trustworthy. Carries the offending sample so callers can
/// pick a stabilizer (constant offset or disk-point shift).
class NearZeroModulusError : public Error {
public:
    NearZeroModulusError(const std::string& message, double min_modulus,
                         double theta)
        : Error("near-zero-modulus", message),
          min_modulus_(min_modulus),
          theta_(theta) {}

    double min_modulus() const noexcept { return min_modulus_; }
    double theta() const noexcept { return theta_; }

private:
    double min_modulus_;
    double theta_;
};

/// A stabilizer was applied but the perturbed signal still violates the
/// modulus floor.
class StillDegenerateError : public Error {
public:
    StillDegenerateError(const std::string& message, double min_modulus)
        : Error("still-degenerate", message), min_modulus_(min_modulus) {}

    double min_modulus() const noexcept { return min_modulus_; }

private:
    double min_modulus_;
};

/// Wraps a factorization failure inside the unwinding iteration with the
/// step index at which it happened. `name()` keeps the inner error's name.
class UnwindStepError : public Error {
public:
    UnwindStepError(const Error& inner, std::size_t step)
        : Error(inner.name(), "step " + std::to_string(step) + ": " + inner.what()),
          step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace unwindr
