#pragma once

#include <stdexcept>
#include <string>

namespace ugcmt {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (line-count mismatch, bad UTF-8,
/// broken records). Maps to exit code 1 on the command line.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration values (probabilities out of range, empty lexicon,
/// unreachable calibration targets).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Command-line misuse. Maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ugcmt
