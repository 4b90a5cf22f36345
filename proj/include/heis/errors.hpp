#pragma once

#include <stdexcept>
#include <string>

namespace heis {

/// Malformed input text; carries a byte offset into the source.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Ill-typed diagram: a slice does not fit the running object word.
class TypeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured cap (rewrite steps, dots, degree, search size) was exceeded.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace heis
