#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockpar {

// Refused because the request exceeds a hard resource guard
// (state-space size, enumeration volume).
struct RefusalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input. `position` is a 0-based byte offset into the
// offending text when known.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

}  // namespace blockpar
