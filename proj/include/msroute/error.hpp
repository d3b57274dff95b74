#pragma once

#include <stdexcept>
#include <string>

namespace msroute {

// Base of every error raised by the library. Input problems (parse, validation,
// bad arguments) and internal invariant breaks are kept apart so the CLI can map
// them onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, int line)
        : InputError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

class DuplicateEntityError : public InputError {
public:
    using InputError::InputError;
};

class UnknownNameError : public InputError {
public:
    using InputError::InputError;
};

class InvalidNetError : public InputError {
public:
    using InputError::InputError;
};

class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

class GeometryError : public InputError {
public:
    using InputError::InputError;
};

class MetricError : public InputError {
public:
    using InputError::InputError;
};

// A library invariant did not hold. Always a bug, never bad input.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace msroute
