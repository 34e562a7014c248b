#pragma once

#include <stdexcept>
#include <string>

namespace rlp {

// Exception hierarchy shared by every module. The CLI maps these to exit codes.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(format(what, line)), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  static std::string format(const std::string& what, int line) {
    return line >= 0 ? "line " + std::to_string(line + 1) + ": " + what : what;
  }
  int line_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what) : Error(field + ": " + what), field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

/// The transformed graph is disconnected, so no placement can connect all nodes.
class InfeasibleInstance : public Error {
 public:
  using Error::Error;
};

/// The hide-and-seek seeker faced a disconnected communication graph.
class GameInfeasible : public InfeasibleInstance {
 public:
  using InfeasibleInstance::InfeasibleInstance;
};

class NonconvergenceError : public Error {
 public:
  using Error::Error;
};

class TimeLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace rlp
