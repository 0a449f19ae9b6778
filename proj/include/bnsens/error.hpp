#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bnsens {

/// Base of every error the toolkit throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input to an operation: out-of-range values, unknown names, contract violations.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A network failed structural or numerical validation.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Text input could not be parsed. `line` is 1-based, `column` 1-based or 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(format(line, column, what)), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& what) {
        std::string out = "line " + std::to_string(line);
        if (column != 0) out += ", column " + std::to_string(column);
        return out + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

/// A conditional probability was requested given evidence of probability zero.
class ZeroEvidence : public Error {
public:
    using Error::Error;
};

/// Joint enumeration would exceed the configured state cap.
class StateSpaceTooLarge : public Error {
public:
    using Error::Error;
};

/// A configured size cap (parameters, variables, grid dimension) was exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// An interval comparison stayed ambiguous up to the maximum precision.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

} // namespace bnsens
