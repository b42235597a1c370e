#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsm {

// Parse failure with a source location; what() is "file:line:col: message".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, std::size_t column,
             const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

// Semantic fault in a model surfaced after parsing (unknown species reference,
// communication arity mismatch, unknown calculus tag, ...).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Breach of an engine invariant. Indicates a bug in the engine or a plugin,
// never bad user input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gsm
