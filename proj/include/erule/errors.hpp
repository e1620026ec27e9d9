#pragma once

#include <stdexcept>
#include <string>

namespace erule {

// Broad failure classes; the CLI maps them onto exit codes 1/2/3.
enum class ErrorCategory { usage, data, computation };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

/// Malformed CSV input. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(ErrorCategory::data,
                line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

class TransportError : public Error {
public:
    explicit TransportError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

class EmptyDatasetError : public Error {
public:
    explicit EmptyDatasetError(const std::string& what)
        : Error(ErrorCategory::computation, what) {}
};

/// Raised when a training set holds a single class.
class DegenerateDatasetError : public Error {
public:
    explicit DegenerateDatasetError(const std::string& what)
        : Error(ErrorCategory::computation, what) {}
};

}  // namespace erule
