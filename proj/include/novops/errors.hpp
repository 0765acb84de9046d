#pragma once

#include <stdexcept>
#include <string>

namespace novops {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char *kind() const noexcept { return "error"; }
};

#define NOVOPS_ERROR(Name, tag)                                               \
    class Name : public Error {                                               \
    public:                                                                   \
        using Error::Error;                                                   \
        const char *kind() const noexcept override { return tag; }            \
    };

NOVOPS_ERROR(ArityError, "arity")
NOVOPS_ERROR(SlotError, "slot")
NOVOPS_ERROR(MultilinearityError, "multilinearity")
NOVOPS_ERROR(BoundError, "bound")
NOVOPS_ERROR(ModeError, "mode")
NOVOPS_ERROR(ZeroInputError, "zero-input")
NOVOPS_ERROR(NotDivisibleError, "not-divisible")
NOVOPS_ERROR(DiagnosticError, "diagnostic")
NOVOPS_ERROR(FormatError, "format")

#undef NOVOPS_ERROR

/// Syntax error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::string expected, std::string found)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected " + expected +
                ", found " + found),
          line_(line), column_(column), expected_(std::move(expected)), found_(std::move(found)) {}

    const char *kind() const noexcept override { return "syntax"; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string &expected() const { return expected_; }
    const std::string &found() const { return found_; }

private:
    std::size_t line_, column_;
    std::string expected_, found_;
};

}  // namespace novops
