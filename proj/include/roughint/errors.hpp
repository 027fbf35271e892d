#pragma once

#include <stdexcept>
#include <string>

namespace roughint {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller asked for something outside an operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidRank : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class NonAlternatingGerm : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NonFiniteValue : public Error {
public:
    using Error::Error;
};

class MissingBounds : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Raised in strict certification mode when an exponent or dimension
// hypothesis does not hold for the supplied data.
class CertificationError : public Error {
public:
    using Error::Error;
};

class GeometryError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// The query point is too close to a sampled image curve.
class GuardViolation : public Error {
public:
    using Error::Error;
};

class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

} // namespace roughint
