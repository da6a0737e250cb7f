#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmequiv {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::string expected)
      : Error("syntax error at byte " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

class UnknownIdentifier : public Error {
 public:
  explicit UnknownIdentifier(std::string name)
      : Error("unknown identifier '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class EvaluationError : public Error {
  using Error::Error;
};

class AssumptionViolation : public Error {
  using Error::Error;
};

class DivisionByZero : public Error {
  using Error::Error;
};

class HermitianViolation : public Error {
  using Error::Error;
};

class KernelDegenerate : public Error {
  using Error::Error;
};

class SingularCovariance : public Error {
  using Error::Error;
};

class DegenerateCell : public Error {
  using Error::Error;
};

class GridMismatch : public Error {
  using Error::Error;
};

class GridMissingEndpoints : public Error {
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& what, double achieved)
      : Error(what + " (achieved relative change " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace gmequiv
