#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace collab {

// Raised when an internal protocol contract is broken (overlapping sessions,
// ranking inconsistent with claims, events scheduled in the past). These
// signal a bug in the caller, never bad user input.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The scenario text could not be read into the expected structure.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The scenario parsed but violates one or more invariants.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> errors)
      : std::runtime_error(join(errors)), errors_(std::move(errors)) {}

  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& errors) {
    std::string out;
    for (const auto& e : errors) {
      if (!out.empty()) out += "; ";
      out += e;
    }
    return out;
  }

  std::vector<std::string> errors_;
};

}  // namespace collab
