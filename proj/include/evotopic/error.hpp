#pragma once

#include <stdexcept>
#include <string>

namespace evotopic {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input could not be read or is structurally unusable.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical analysis step has no defined result for its input
/// (undefined trend, degenerate fit, undefined termhood).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// A configuration value violates its constraints.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace evotopic
