#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lndkit {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class VarTableMismatch : public Error {
public:
    using Error::Error;
};

class UnknownVariable : public Error {
public:
    explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

// Raised when a computation hits one of the configured resource caps.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// Precondition violations on mathematical inputs (gcd conditions, bad orders, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace lndkit
