#pragma once

#include <stdexcept>
#include <string>

namespace toricabel {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad ray, unknown cone, parse failure).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The mathematics rules the request out: a non-smooth cone, an empty linear
/// system, a tangent section, a singular trace matrix.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class NotSmoothError : public DegeneracyError {
 public:
  explicit NotSmoothError(const std::string& what) : DegeneracyError("not smooth: " + what) {}
};

class NoSectionsError : public DegeneracyError {
 public:
  explicit NoSectionsError(const std::string& what = "")
      : DegeneracyError(what.empty() ? "no sections" : "no sections: " + what) {}
};

class NonTransversalError : public DegeneracyError {
 public:
  explicit NonTransversalError(const std::string& what)
      : DegeneracyError("non-transversal; move a (" + what + ")") {}
};

class DegenerateSystemError : public DegeneracyError {
 public:
  explicit DegenerateSystemError(const std::string& what)
      : DegeneracyError("positive-dimensional or degenerate: " + what) {}
};

class DegenerateFormError : public DegeneracyError {
 public:
  explicit DegenerateFormError(const std::string& what)
      : DegeneracyError("degenerate form or curve: " + what) {}
};

/// An iterative method failed to reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace toricabel
