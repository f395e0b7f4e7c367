// errors.hpp
// Error types shared by all coboson modules. Each type maps to one CLI exit code.

#pragma once

#include <stdexcept>
#include <string>

namespace cobosons {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Physically meaningless request, e.g. more cobosons than Schmidt modes.
class DomainError : public Error {
public:
    using Error::Error;
};

// Enumeration guards of the brute-force paths.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

// The observed statistic does not depend on the quantity being inferred.
class IllConditioned : public Error {
public:
    using Error::Error;
};

// Inferred values violate the moment inequalities.
class InconsistentData : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace cobosons
