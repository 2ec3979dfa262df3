#pragma once

#include <stdexcept>
#include <string>

namespace qhyper {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Division by an exactly-zero factor somewhere in a computation.
struct PoleError : Error {
    std::string offending_factor;
    explicit PoleError(const std::string& what, std::string factor = {})
        : Error(factor.empty() ? what : what + " [factor: " + factor + "]"),
          offending_factor(std::move(factor)) {}
};

struct InvalidBase : Error {
    using Error::Error;
};

struct VariableMismatch : Error {
    using Error::Error;
};

struct NotInvertible : Error {
    using Error::Error;
};

struct UnsupportedBase : Error {
    using Error::Error;
};

struct NonzeroConstantTerm : Error {
    using Error::Error;
};

struct OrderExceeded : Error {
    using Error::Error;
};

struct NonTerminating : Error {
    using Error::Error;
};

struct OutOfAnnulus : Error {
    using Error::Error;
};

struct NonConvergent : Error {
    using Error::Error;
};

struct UnknownIdentity : Error {
    using Error::Error;
};

struct ModeViolation : Error {
    using Error::Error;
};

struct ConstraintUnsatisfiable : Error {
    using Error::Error;
};

struct OutOfDomain : Error {
    using Error::Error;
};

/// Parse failure with a precise source position and what was expected there.
struct SyntaxError : Error {
    int line;
    int column;
    std::string expected;
    SyntaxError(int line_, int column_, const std::string& expected_)
        : Error("syntax error at " + std::to_string(line_) + ":" +
                std::to_string(column_) + ": expected " + expected_),
          line(line_), column(column_), expected(expected_) {}
};

struct UndeclaredSymbol : Error {
    using Error::Error;
};

struct ArityError : Error {
    using Error::Error;
};

}  // namespace qhyper
