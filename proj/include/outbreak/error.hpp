#pragma once

#include <stdexcept>
#include <string>

namespace outbreak {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Raised by the equilibrium solver when the equilibrium relation has no sign change on (0, 1).
class NoRoot : public Error {
public:
    using Error::Error;
};

/// Raised when the nullclines intersect more than once on (0, 1).
class MultipleRoots : public Error {
public:
    using Error::Error;
};

class IntegrationDiverged : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class InsufficientTail : public Error {
public:
    using Error::Error;
};

/// The final normal-form rescaling divides by 1 - beta - 3 alpha*; it must stay away from zero.
class DegenerateScaling : public Error {
public:
    using Error::Error;
};

/// The horizontal scale P of the spike estimate diverges (mu_hat = 0 or |c0 mu_hat| >= 1).
class UndefinedScale : public Error {
public:
    using Error::Error;
};

}  // namespace outbreak
