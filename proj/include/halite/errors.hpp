#pragma once

#include <stdexcept>
#include <string>

namespace halite {

// Base type for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed files, schema violations, out-of-range parameters.
// The CLI maps ValidationError (and subclasses) to exit code 1, all other
// failures to exit code 2.
struct ValidationError : Error {
    using Error::Error;
};

// A feature is missing a required property or carries one of the wrong type.
struct SchemaError : ValidationError {
    using ValidationError::ValidationError;
};

// Invalid geometry that could not be trivially repaired.
struct GeometryError : ValidationError {
    using ValidationError::ValidationError;
};

// Query outside a tabulated data hull (no extrapolation is ever performed).
struct RangeError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace halite
