#pragma once

#include <stdexcept>
#include <string>

namespace obcs {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A size precondition was violated (e.g. sparsity larger than dimension).
struct InvalidDimension : Error {
    using Error::Error;
};

/// A numeric parameter is outside its admissible range.
struct InvalidParameter : Error {
    using Error::Error;
};

/// Two operands have incompatible shapes.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// Function argument outside the mathematical domain (poles, |u| >= 1, ...).
struct DomainError : Error {
    using Error::Error;
};

/// An operation that needs at least one measurement received none.
struct EmptyMeasurement : Error {
    using Error::Error;
};

}  // namespace obcs
