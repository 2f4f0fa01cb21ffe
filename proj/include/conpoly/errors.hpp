#pragma once

#include <stdexcept>
#include <string>

namespace conpoly {

/// Base class for computation failures (as opposed to bad arguments, which
/// raise std::invalid_argument).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Successive quadrature orders disagree beyond tolerance.
class QuadratureDivergence : public Error {
 public:
  using Error::Error;
};

/// Gram-Schmidt met a non-positive squared norm.
class NonPositiveGram : public Error {
 public:
  NonPositiveGram(int degree, const std::string& what)
      : Error(what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

/// Requested closed form is not available for these parameters.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Z-th and (Z+1)-th levels coincide; the ground density is not defined.
class DegenerateGroundState : public Error {
 public:
  using Error::Error;
};

}  // namespace conpoly
