#pragma once

#include <stdexcept>
#include <string>

namespace bbdrag {

/// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input: out-of-domain argument, malformed model, bad configuration.
class InputError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not deliver the requested accuracy
/// (quadrature budget exhausted, ODE step underflow, monitor violation,
/// root bracket failure).
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace bbdrag
