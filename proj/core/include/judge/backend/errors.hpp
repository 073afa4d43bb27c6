#pragma once

#include <stdexcept>
#include <string>

namespace judge::backend {

/// The judge model could not produce a usable answer. Callers turn this into
/// an Unscored outcome.
class BackendFailure : public std::runtime_error {
 public:
  explicit BackendFailure(const std::string& what, int attempts = 0)
      : std::runtime_error(what), attempts_(attempts) {}

  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

/// Credentials were rejected. Not retried.
class AuthError : public BackendFailure {
 public:
  using BackendFailure::BackendFailure;
};

/// Retryable transport problem: connection, timeout, 5xx.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingPlaceholder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace judge::backend
