#pragma once

#include <stdexcept>
#include <string>

namespace priceform {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A normalizing integral overflowed, vanished or was not finite.
class NonFiniteIntegral : public Error {
public:
    using Error::Error;
};

/// An instantaneous trade intensity exceeded the thinning envelope.
class EnvelopeViolation : public Error {
public:
    using Error::Error;
};

/// Grid values fell below the representable range between renormalizations.
class Underflow : public Error {
public:
    using Error::Error;
};

class ZeroMass : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class PolicyStateMismatch : public Error {
public:
    using Error::Error;
};

/// Invalid configuration; `field()` is the dotted path of the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& reason)
        : Error(field.empty() ? reason : field + " " + reason), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace priceform
