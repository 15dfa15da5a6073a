#pragma once

#include <stdexcept>
#include <string>

namespace rts {

/// Base class for all user-facing errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Combining values that belong to different semirings.
class SemiringMismatchError : public Error {
public:
    using Error::Error;
};

/// Malformed literal, document or command-line expression.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what), line(line), column(column) {}
    explicit ParseError(const std::string& what) : Error(what), line(0), column(0) {}

    int line;    // 1-based, 0 if unknown
    int column;  // 1-based, 0 if unknown
};

/// A symbol applied to the wrong number of arguments.
class ArityError : public Error {
public:
    using Error::Error;
};

/// Unknown symbol/parameter/description name or a missing binding.
class LookupError : public Error {
public:
    using Error::Error;
};

/// A fixed-point system with an unguarded (bare variable) right-hand side.
class ImproperSystemError : public Error {
public:
    using Error::Error;
};

/// Matrix/vector dimensions do not match the systems they connect.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Truncated series combined at different height bounds.
class BoundMismatchError : public Error {
public:
    using Error::Error;
};

/// An operation that requires a flat description got a nested one.
class NotFlatError : public Error {
public:
    using Error::Error;
};

/// Search space larger than the configured enumeration budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

}  // namespace rts
