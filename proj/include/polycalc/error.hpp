#pragma once

#include <stdexcept>
#include <string>

namespace polycalc {

/// Violated precondition or ill-formed input (CLI exit code 1).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the active candidate budget.
class BudgetExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

/// JSON input does not match the expected schema; `path` locates the field.
class SchemaError : public DomainError {
 public:
  SchemaError(std::string path, const std::string& what)
      : DomainError(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace polycalc
