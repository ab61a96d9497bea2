#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fibrato {

/// Error thrown by constructors, validators and searches. `kind` is a stable
/// machine-readable tag (e.g. "DanglingReference", "BudgetExceeded") that the
/// CLI maps to exit codes and reports verbatim.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

} // namespace fibrato
