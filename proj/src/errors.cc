#include "optmon/errors.h"

#include <sstream>

namespace optmon {

namespace {
std::string with_position(const std::string &message, std::size_t line,
                          std::size_t column) {
    if (line == 0)
        return message;
    std::ostringstream out;
    out << "line " << line << ", column " << column << ": " << message;
    return out.str();
}
}  // namespace

ParseError::ParseError(const std::string &message, std::size_t line,
                       std::size_t column)
    : Error(with_position(message, line, column)),
      detail_(message),
      line_(line),
      column_(column) {}

UnsupportedRequirementError::UnsupportedRequirementError(
    const std::string &requirement, std::size_t line, std::size_t column)
    : ParseError("unsupported requirement " + requirement, line, column),
      requirement_(requirement) {}

ObservationError::ObservationError(const std::string &message, std::size_t line,
                                   std::string suggestion)
    : Error("observation line " + std::to_string(line) + ": " + message +
            (suggestion.empty() ? std::string()
                                : " (did you mean " + suggestion + "?)")),
      line_(line),
      suggestion_(std::move(suggestion)) {}

ObservationInfeasibleError::ObservationInfeasibleError(std::size_t index,
                                                       const std::string &action)
    : Error("observation " + std::to_string(index) + " " + action +
            " is not applicable in the current state"),
      index_(index) {}

}  // namespace optmon
