#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace tdet {

using Complex = std::complex<double>;

/// Base class for every failure raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shapes or block dimensions that do not fit together.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A precondition on an argument was violated (band too large for the grid, nonzero a0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A matrix or symbol value that must be invertible is not (numerically).
class SingularError : public Error {
public:
  SingularError(const std::string& what, double condition_hint)
      : Error(what), condition_hint_(condition_hint) {}
  double condition_hint() const noexcept { return condition_hint_; }

private:
  double condition_hint_;
};

/// The symbol winds around the origin; no continuous logarithm exists.
class WindingError : public Error {
public:
  WindingError(const std::string& what, int winding) : Error(what), winding_(winding) {}
  int winding() const noexcept { return winding_; }

private:
  int winding_;
};

/// A residual certificate (reconstruction, mutual inverse, ...) exceeded its tolerance.
class ResidualError : public Error {
public:
  ResidualError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Adaptive section growth did not settle before the cap.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, Complex previous, Complex last)
      : Error(what), previous_(previous), last_(last) {}
  Complex previous() const noexcept { return previous_; }
  Complex last() const noexcept { return last_; }

private:
  Complex previous_;
  Complex last_;
};

} // namespace tdet
