#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confrac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation outside a primitive's domain (ln of a nonpositive value, division by zero, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Rejected argument: alpha out of (0,1], reversed window, negative order, ...
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Quadrature did not converge, an ODE step blew up, a limit does not exist, ...
class NumericError : public Error {
public:
    using Error::Error;
};

/// A theorem's hypothesis could not be established (e.g. non-monotone input where a
/// direction has to be detected).
class HypothesisError : public Error {
public:
    using Error::Error;
};

}  // namespace confrac
