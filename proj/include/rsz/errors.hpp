#pragma once

#include <stdexcept>
#include <string>

namespace rsz {

// Exit-code families used by the CLI: 2 parameter, 3 construction/budget,
// 4 integrity.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class ParseError : public ParameterError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ParameterError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Raised when an input exceeds a configured enumeration or exact-arithmetic cap.
class CapError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegrityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace rsz
