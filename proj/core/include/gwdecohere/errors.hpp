#pragma once

#include <stdexcept>
#include <string>

namespace gwd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a type invariant or an operation precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The requested integral does not converge (zero filter bandwidth).
class DivergentIntegral : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget before meeting tolerance.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// No background means no dephasing, so the critical radius is infinite.
class NoDecoherence : public Error {
public:
    using Error::Error;
};

/// Root bracketing failed; the message carries the scanned interval.
class BracketFailure : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidArgument(what);
}

}  // namespace detail
}  // namespace gwd
