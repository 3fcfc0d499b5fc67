#pragma once

#include <stdexcept>
#include <string>

namespace ltc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (e.g. log_gamma(x <= 0)).
class DomainError : public Error {
public:
    using Error::Error;
};

// A trial family whose parameters cannot be normalized.
class ConstraintViolation : public Error {
public:
    using Error::Error;
};

// Integrand produced NaN or +-inf at a quadrature node.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

// A functional failed to converge on its small-t or tail panel.
class DivergentError : public Error {
public:
    using Error::Error;
};

class ObjectiveFailure : public Error {
public:
    using Error::Error;
};

// Malformed configuration or command-line input.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace ltc
