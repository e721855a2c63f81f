#pragma once

#include <stdexcept>
#include <string>

namespace miop {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched variable tags or scalar contexts, invalid parameters, bad CLI input.
struct ConfigurationError : Error {
    using Error::Error;
};

/// A division that was required to be exact left a nonzero remainder.
struct InexactDivision : Error {
    using Error::Error;
};

/// An x-picture value that should be a polynomial in eta(x) is not
/// (not even / not symmetric / not self-conjugate).
struct ReductionFailure : Error {
    using Error::Error;
};

/// A recurrence coefficient has a vanishing denominator at the given parameters.
struct SingularCoefficient : Error {
    using Error::Error;
};

/// The gauge factors of a Wronskian did not cancel into a polynomial.
struct NonPolynomialResult : Error {
    using Error::Error;
};

/// The top recurrence coefficient used to regenerate a polynomial vanished.
struct LeadingCoefficientZero : Error {
    using Error::Error;
};

/// Float backend: the weight has a pole on the integration interval.
struct PoleEncountered : Error {
    using Error::Error;
};

/// Float backend: argument outside the family interval.
struct DomainError : Error {
    using Error::Error;
};

/// Float backend: quadrature refinement did not meet its tolerance contract.
struct NonConvergent : Error {
    using Error::Error;
};

}  // namespace miop
