#pragma once

#include <stdexcept>
#include <string>

namespace tforge {

// Caller violated a precondition (bad index, k out of range, malformed input).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numeric result could not be certified to the requested accuracy.
class PrecisionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tforge
