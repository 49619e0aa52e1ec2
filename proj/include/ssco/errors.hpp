#pragma once

#include <stdexcept>
#include <string>

namespace ssco {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed pattern or cost text, with a 1-based location.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// An input file cannot be read.
class IoError : public Error {
public:
    using Error::Error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A cost matrix does not match the (k+1)n frame of the problem.
class CostDimensionError : public Error {
public:
    using Error::Error;
};

/// No regular pencil was drawn within the retry budget.
class RegularityUnreachable : public Error {
public:
    using Error::Error;
};

/// det(A - lambda E) vanishes identically.
class SingularPencil : public Error {
public:
    using Error::Error;
};

/// Too many actuators for exhaustive subset enumeration.
class SubsetBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Actuator and sensor solutions come from different pivot collections.
class MismatchedPivotChoice : public Error {
public:
    using Error::Error;
};

/// The pattern is empty, so no dedicated solution exists.
class NotNormalizable : public Error {
public:
    using Error::Error;
};

} // namespace ssco
