#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cuc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or syntactic error in a `.cuc` or `.inv` source, with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Expression evaluation failure: unbound variable, overflow, type mismatch,
/// or `?ev` read with no event. The exploration engines attach the label and
/// a rendering of the configuration that was being stepped.
class EvalError : public Error {
 public:
  explicit EvalError(const std::string& message) : Error(message), reason_(message) {}
  EvalError(const std::string& message, unsigned long long label, std::string config)
      : Error("at label " + std::to_string(label) + " in " + config + ": " + message),
        reason_(message),
        label_(label),
        config_(std::move(config)) {}

  const std::string& reason() const { return reason_; }
  std::optional<unsigned long long> label() const { return label_; }
  const std::string& config() const { return config_; }

 private:
  std::string reason_;
  std::optional<unsigned long long> label_;
  std::string config_;
};

/// A checker was invoked on inputs that do not satisfy its precondition
/// (an initial set violating the invariant, a non prefix-closed set, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cuc
