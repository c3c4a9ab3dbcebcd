#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace shiftlab {

// Malformed or inadmissible input. The CLI maps these to exit status 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

class NotIrreducible : public InputError {
 public:
  NotIrreducible(const std::string& what,
                 std::vector<std::vector<std::string>> components)
      : InputError(what), components_(std::move(components)) {}

  const std::vector<std::vector<std::string>>& components() const noexcept {
    return components_;
  }

 private:
  std::vector<std::vector<std::string>> components_;
};

// A numeric procedure did not reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shiftlab
