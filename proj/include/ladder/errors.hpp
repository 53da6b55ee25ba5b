#pragma once

#include <stdexcept>
#include <string>

namespace ladder {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on arguments was violated (bad p, r, s, barriers, start...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An internal cross-check failed: singular system, broken bound certificate,
/// closed form that does not satisfy its defining rows.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// An iteration hit its cap before meeting the stopping rule.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace ladder
