#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lnmgf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exponent left the representable floating-point range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver did not reach its residual target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The integrand returned inf/nan somewhere on the tile grid.
class NonFiniteIntegrand : public Error {
 public:
  NonFiniteIntegrand(const std::string& what, double x) : Error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// The moment ODE blew up; carries the step at which it happened.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step) : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// The expression under the square root of the variance rate is negative.
class NegativeRadicand : public Error {
 public:
  NegativeRadicand(const std::string& what, double radicand) : Error(what), radicand_(radicand) {}
  double radicand() const noexcept { return radicand_; }

 private:
  double radicand_;
};

/// The variance ODE needed more clamps than the configured budget.
class NegativeVariance : public Error {
 public:
  using Error::Error;
};

}  // namespace lnmgf
