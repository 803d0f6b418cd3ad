#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minpair {

/// Failure categories. Each maps to a distinct CLI exit code.
enum class ErrorKind {
  Usage = 2,    // bad flag, bad argument combination, API misuse
  Io = 3,       // missing or unreadable input
  Schema = 4,   // malformed file contents
  Ingest = 5,   // dataset invariant violated during loading
  Config = 6,   // invalid configuration values
  Parse = 7,    // rulepack syntax/symbol errors
  Numeric = 8,  // degenerate statistics (zero variance, empty inputs)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

struct UsageError : Error {
  explicit UsageError(const std::string& w) : Error(ErrorKind::Usage, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};
struct SchemaError : Error {
  explicit SchemaError(const std::string& w) : Error(ErrorKind::Schema, w) {}
};
struct IngestError : Error {
  explicit IngestError(const std::string& w) : Error(ErrorKind::Ingest, w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};
struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};

/// Rulepack syntax or resolution error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(ErrorKind::Parse, std::to_string(line) + ":" +
                                    std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace minpair
