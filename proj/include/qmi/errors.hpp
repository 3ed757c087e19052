#pragma once

#include <stdexcept>
#include <string>

namespace qmi {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidMatrixError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct NotHermitianError : Error {
    using Error::Error;
};

struct NotPositiveDefiniteError : Error {
    using Error::Error;
};

struct SingularError : Error {
    using Error::Error;
};

struct NoConvergenceError : Error {
    using Error::Error;
};

/// Newton sign iteration hit a (numerically) singular iterate, which at
/// floating point covers spectra touching the imaginary axis.
struct SingularIterateError : Error {
    using Error::Error;
};

struct InfiniteEtaError : Error {
    using Error::Error;
};

struct NotInRightHalfPlaneError : Error {
    using Error::Error;
};

struct OrderViolationError : Error {
    using Error::Error;
};

struct RadiusNotSubUnitError : Error {
    using Error::Error;
};

struct MinusOneInSpectrumError : Error {
    using Error::Error;
};

struct SingularBaseError : Error {
    using Error::Error;
};

struct NotIsometryFamilyError : Error {
    using Error::Error;
};

struct SamplerViolationError : Error {
    using Error::Error;
};

} // namespace qmi
