#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypermachine {

enum class ErrorKind {
  kStructural,        // malformed machine, configuration, or edit
  kInput,             // input word or argument outside the contract
  kUnsupportedClass,  // operation not defined for this kind of machine
  kInvalidEncoding,   // bit string is not a valid machine description
  kParse,             // DSL syntax or semantic error
  kEvaluation,        // a guess procedure failed
  kRefused,           // request exceeds a safety cap
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Position is the index of the first bit at which the string stops being a
// valid description.
class InvalidEncoding : public Error {
 public:
  InvalidEncoding(std::size_t position, const std::string& message)
      : Error(ErrorKind::kInvalidEncoding,
              message + " at bit " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorKind::kParse, std::to_string(line) + ":" +
                                     std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        detail_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

}  // namespace hypermachine
