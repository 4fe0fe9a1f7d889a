#pragma once

#include <stdexcept>
#include <string>

namespace mandy {

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A dense array would exceed the configured entry cap.
class SizeCapExceeded : public Error {
public:
    using Error::Error;
};

/// Two tensors do not share mode sizes.
class ModeMismatch : public Error {
public:
    using Error::Error;
};

/// Matrix or vector dimensions are incompatible.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// Pseudoinverse requested for an all-zero matricization.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// Exact coefficients requested for a layout the closed form does not cover.
class UnsupportedLayout : public Error {
public:
    using Error::Error;
};

/// Integrator produced a non-finite state or failed to advance.
class StepFailure : public Error {
public:
    using Error::Error;
};

/// Invalid configuration or input file.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical backend routine reported failure.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace mandy
