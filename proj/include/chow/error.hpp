#pragma once

#include <stdexcept>
#include <string>

namespace chow {

/// Base class for every error the library throws.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Arithmetic left the representable range of the exact coefficient type.
struct OverflowError : Error {
    explicit OverflowError(const std::string& what) : Error(what) {}
};

/// A defs file failed to parse; carries the offending position.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int col_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ":" + std::to_string(col_) +
                ": " + msg),
          line(line_), column(col_) {}
};

}  // namespace chow
