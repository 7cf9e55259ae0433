#pragma once

#include <stdexcept>
#include <string>

namespace savskit {

// Error categories double as CLI exit codes (see `savskit --help`).
enum class ErrorKind : int {
  usage = 2,
  config = 3,
  io = 4,
  data = 5,
  numerical = 6,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

/// Invalid or inconsistent input data (shapes, non-numeric cells, zero columns).
class DataError : public Error {
 public:
  explicit DataError(const std::string& message) : Error(ErrorKind::data, message) {}
};

/// Configuration that violates a documented schema or invariant.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error(ErrorKind::config, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorKind::io, message) {}
};

/// Non-finite values, failed factorizations, degenerate conditionals.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message)
      : Error(ErrorKind::numerical, message) {}
};

}  // namespace savskit
