#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user data: malformed text, a symbol that is not regular positive,
// mismatched sizes. The CLI maps this to exit code 2.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class ParseError : public InvalidInput {
public:
    ParseError(const std::string &msg, std::size_t position)
        : InvalidInput(msg + " at position " + std::to_string(position)), position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A broken internal invariant (e.g. a certificate that fails its own check).
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace ncd
