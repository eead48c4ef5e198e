#pragma once

#include <stdexcept>
#include <string>

namespace cuniform {

// A state fell outside the non-angular grid bounds.
class OutOfDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every propagation out of a level left the grid; the level chain cannot
// continue past `level`.
class DeadLevelError : public std::runtime_error {
 public:
  DeadLevelError(int level, const std::string& what)
      : std::runtime_error(what), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

// Every sampled trajectory in a control cycle hit an obstacle.
class AllCollidingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration file is missing, malformed, or violates an invariant.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A policy file does not match the experiment configuration it is used with.
class PolicyMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cuniform
