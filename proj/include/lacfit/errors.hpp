#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lacfit {

/// Root of all lacfit errors; anything below it maps to a CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arc-length argument left the maximal interval of the basic curve.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Parameter vector violates the admissible set.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

/// Consecutive tangents are (nearly) antiparallel.
class CuspError : public Error {
 public:
  CuspError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Curvature changes sign or is not strictly monotone; segment the input first.
class NotLacSegmentError : public Error {
 public:
  using Error::Error;
};

/// Curvature data too rough for parameter recovery; smooth the input first.
class NoisyDataError : public Error {
 public:
  using Error::Error;
};

/// Input carries no usable curvature information (straight line, constant R).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Curve is shorter than the requested equal-chord walk.
class LengthDeficitError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lacfit
