#pragma once

#include <stdexcept>
#include <string>

namespace reebflow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition violation by the caller (bad vector, wrong sign, mismatched sizes).
struct InvalidInput : Error {
  using Error::Error;
};

// The evaluation point is too close to the boundary of the Reeb cone.
struct BoundaryProximity : Error {
  using Error::Error;
};

struct IntegrationFailure : Error {
  using Error::Error;
};

struct RootBracketFailure : Error {
  using Error::Error;
};

struct StepFailure : Error {
  using Error::Error;
};

struct ConfigError : Error {
  ConfigError(int line, std::string key, const std::string& what)
      : Error("line " + std::to_string(line) + ": '" + key + "': " + what),
        line_(line),
        key_(std::move(key)) {}

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

}  // namespace reebflow
