#pragma once

#include <stdexcept>
#include <string>

namespace gridspread {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid input: bad grid dimensions, malformed documents, unknown symbols.
class ValidationError : public Error {
    using Error::Error;
};

// A broken internal invariant, e.g. a construction failing its own
// bijection check. Indicates a bug rather than bad input.
class InvariantViolation : public Error {
    using Error::Error;
};

// An instance too large for an exhaustive operation.
class SizeRefusal : public Error {
    using Error::Error;
};

}  // namespace gridspread
