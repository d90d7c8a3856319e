#pragma once

#include <stdexcept>
#include <string>

namespace catiso {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller-side problems: bad configuration, malformed input, violated
// preconditions, desk-scale guardrails. The CLI maps these to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};

class FormatError : public UsageError {
 public:
  using UsageError::UsageError;
};

class PreconditionError : public UsageError {
 public:
  using UsageError::UsageError;
};

// An enumeration would exceed the configured cap (seed space too large).
class LimitError : public UsageError {
 public:
  using UsageError::UsageError;
};

// Internal consistency failures: a reconstruction that does not match, a
// tape that fails to restore. The CLI maps these to exit code 3.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

}  // namespace catiso
