#pragma once

#include <stdexcept>
#include <string>

namespace aaatrig {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad sample files, violated preconditions, inconsistent sizes.
class InputError : public Error {
public:
    using Error::Error;
};

// The numerics could not deliver a result (singular basis, degenerate far field, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace aaatrig
