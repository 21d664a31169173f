#pragma once

#include <stdexcept>
#include <string>

namespace pcl {

// Domain errors map to CLI exit code 1, parse/config errors to 2 and
// resource limits to 3.
class DomainError : public std::runtime_error {
public:
  DomainError(std::string kind, const std::string &what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

struct DivisionByZero : DomainError {
  explicit DivisionByZero(const std::string &w = "division by zero")
      : DomainError("DivisionByZero", w) {}
};

struct SpecMismatch : DomainError {
  explicit SpecMismatch(const std::string &w = "operands from different fields or rings")
      : DomainError("SpecMismatch", w) {}
};

struct NotPIndependent : DomainError {
  explicit NotPIndependent(const std::string &w) : DomainError("NotPIndependent", w) {}
};

struct NotInSpan : DomainError {
  explicit NotInSpan(const std::string &w) : DomainError("NotInSpan", w) {}
};

struct NotSeparableBase : DomainError {
  explicit NotSeparableBase(const std::string &w) : DomainError("NotSeparableBase", w) {}
};

struct NotSeparable : DomainError {
  explicit NotSeparable(const std::string &w) : DomainError("NotSeparable", w) {}
};

struct NonUnitJacobian : DomainError {
  explicit NonUnitJacobian(const std::string &w) : DomainError("NonUnitJacobian", w) {}
};

struct NoConvergence : DomainError {
  explicit NoConvergence(const std::string &w) : DomainError("NoConvergence", w) {}
};

struct DenominatorVanishes : DomainError {
  explicit DenominatorVanishes(const std::string &w) : DomainError("DenominatorVanishes", w) {}
};

struct ExponentOverflow : DomainError {
  explicit ExponentOverflow(const std::string &w = "exponent overflow")
      : DomainError("ExponentOverflow", w) {}
};

class ResourceLimit : public std::runtime_error {
public:
  explicit ResourceLimit(const std::string &w) : std::runtime_error("ResourceLimit: " + w) {}
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &msg, std::size_t pos, std::string expected = {})
      : std::runtime_error(format(msg, pos, expected)), pos_(pos),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return pos_; }
  const std::string &expected() const noexcept { return expected_; }

private:
  static std::string format(const std::string &msg, std::size_t pos, const std::string &exp) {
    std::string s = "ParseError at " + std::to_string(pos) + ": " + msg;
    if (!exp.empty())
      s += " (expected " + exp + ")";
    return s;
  }
  std::size_t pos_;
  std::string expected_;
};

class UnknownVariable : public ParseError {
public:
  UnknownVariable(const std::string &name, std::size_t pos)
      : ParseError("unknown variable '" + name + "'", pos), name_(name) {}
  const std::string &name() const noexcept { return name_; }

private:
  std::string name_;
};

} // namespace pcl
