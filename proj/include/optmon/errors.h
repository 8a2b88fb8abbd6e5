#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optmon {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Syntax or validation failure in a text input. line/column are 1-based;
// 0 means the position is unknown.
class ParseError : public Error {
public:
    ParseError(const std::string &message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string &detail() const { return detail_; }

private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

class UnsupportedRequirementError : public ParseError {
public:
    UnsupportedRequirementError(const std::string &requirement, std::size_t line,
                                std::size_t column);

    const std::string &requirement() const { return requirement_; }

private:
    std::string requirement_;
};

class ResourceLimitError : public Error {
public:
    using Error::Error;
};

class ObservationError : public Error {
public:
    ObservationError(const std::string &message, std::size_t line,
                     std::string suggestion);

    std::size_t line() const { return line_; }
    const std::string &suggestion() const { return suggestion_; }

private:
    std::size_t line_;
    std::string suggestion_;
};

// Raised in strict monitoring mode when an observed action is not applicable
// in the running state.
class ObservationInfeasibleError : public Error {
public:
    ObservationInfeasibleError(std::size_t index, const std::string &action);

    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class CommitmentError : public Error {
public:
    using Error::Error;
};

}  // namespace optmon
