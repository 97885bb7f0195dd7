#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ckg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates a documented precondition or range.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed text input. `location()` is a 1-based line, row or character
// offset depending on the format; 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t location = 0)
        : Error(what), location_(location) {}

    std::size_t location() const noexcept { return location_; }

private:
    std::size_t location_;
};

class FetchError : public Error {
public:
    using Error::Error;
};

}  // namespace ckg
