#pragma once

#include <stdexcept>
#include <string>

#include "probcf/ast.hpp"

namespace probcf {

/// Base class for diagnostics that carry a source position.
class SourceError : public std::runtime_error {
 public:
  SourceError(const std::string& kind, const std::string& message, SourcePos pos);
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

class LexError : public SourceError {
 public:
  LexError(const std::string& message, SourcePos pos) : SourceError("lexical error", message, pos) {}
};

class SyntaxError : public SourceError {
 public:
  SyntaxError(const std::string& message, SourcePos pos) : SourceError("syntax error", message, pos) {}
};

class TypeError : public SourceError {
 public:
  TypeError(const std::string& message, SourcePos pos) : SourceError("type error", message, pos) {}
};

class UndeclaredVariable : public SourceError {
 public:
  UndeclaredVariable(const std::string& name, SourcePos pos)
      : SourceError("undeclared variable", name, pos) {}
};

/// Runtime evaluation failure (division by zero, bad distribution parameters).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DistributionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InfeasibleRestriction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace probcf
