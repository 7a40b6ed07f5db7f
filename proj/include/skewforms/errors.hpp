#ifndef SKEWFORMS_ERRORS_HPP
#define SKEWFORMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skewforms {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation or construction left the real domain (ln of a nonpositive
/// number, division by zero, fractional power of a negative number).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A variable was needed for evaluation but no value was bound to it.
class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A variable name is not part of the ambient coordinate set.
class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable " + name), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Operation called with arguments outside its contract (wrong degree,
/// mismatched coordinate sets, bad dimensions).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A declaration name was requested that the document does not contain.
class NameNotFound : public Error {
 public:
  explicit NameNotFound(const std::string& name) : Error("no declaration named " + name) {}
};

/// Text input could not be parsed. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

}  // namespace skewforms

#endif  // SKEWFORMS_ERRORS_HPP
