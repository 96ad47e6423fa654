#pragma once

#include <stdexcept>
#include <string>

namespace hammology {

// Error categories map onto the CLI exit codes: input errors exit with 2,
// cap violations with 3, internal invariant violations with 4.

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hammology
