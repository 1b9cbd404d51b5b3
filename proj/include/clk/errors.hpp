#pragma once

#include <stdexcept>
#include <string>

namespace clk {

/// Malformed or invalid user input. `subject()` names the offending item
/// (vertex, edge, block, key) when there is one.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::string subject = {})
      : std::runtime_error(what), subject_(std::move(subject)) {}

  const std::string& subject() const noexcept { return subject_; }

 private:
  std::string subject_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace clk
