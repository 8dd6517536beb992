#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ualg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad term, bad table, unknown name).
class InputError : public Error {
public:
    using Error::Error;
};

/// Syntax error with a 1-based source position, optionally naming the
/// source file.
class ParseError : public InputError {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column, const std::string& source = {})
        : InputError((source.empty() ? "" : source + ":") + format(message, line, column)), detail_(message),
          line_(line), column_(column) {}

    /// The message without its position.
    const std::string& detail() const { return detail_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column) {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    }

    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

/// A configured enumeration or construction bound would be exceeded.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, std::size_t cap)
        : Error(what + " exceeds the configured cap of " + std::to_string(cap)), cap_(cap) {}

    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
};

/// A checked invariant that the library itself guarantees failed to hold.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace ualg
