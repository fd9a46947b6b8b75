#pragma once

#include <stdexcept>
#include <string>

namespace horoball {

// Bad or inconsistent input.  The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric routine failed to deliver its contract.  Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFullDimensional : public ValidationError {
 public:
  explicit NotFullDimensional(const std::string& what)
      : ValidationError("NotFullDimensional: " + what) {}
};

class OriginNotInterior : public ValidationError {
 public:
  explicit OriginNotInterior(const std::string& what)
      : ValidationError("OriginNotInterior: " + what) {}
};

class DuplicateVertex : public ValidationError {
 public:
  explicit DuplicateVertex(const std::string& what)
      : ValidationError("DuplicateVertex: " + what) {}
};

class NotAProperFace : public ValidationError {
 public:
  explicit NotAProperFace(const std::string& what)
      : ValidationError("NotAProperFace: " + what) {}
};

class EmptyVertexSet : public ValidationError {
 public:
  explicit EmptyVertexSet(const std::string& what)
      : ValidationError("EmptyVertexSet: " + what) {}
};

class NotInInterior : public ValidationError {
 public:
  explicit NotInInterior(const std::string& what)
      : ValidationError("NotInInterior: " + what) {}
};

class EvalError : public ValidationError {
 public:
  explicit EvalError(const std::string& what)
      : ValidationError("EvalError: " + what) {}
};

class WitnessSearchFailed : public NumericalError {
 public:
  explicit WitnessSearchFailed(const std::string& what)
      : NumericalError("WitnessSearchFailed: " + what) {}
};

class NoConvergence : public NumericalError {
 public:
  explicit NoConvergence(const std::string& what)
      : NumericalError("NoConvergence: " + what) {}
};

}  // namespace horoball
