#pragma once

#include <stdexcept>
#include <string>

namespace dbar {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible domain (alpha < 0, m <= 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A custom radial density has an infinite moment of the given order.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int order) : Error(what), order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

/// Adaptive quadrature ran out of its subdivision budget.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// A kernel series could not reach its tail bound within the term budget.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the convergence domain of a series.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A requested window or grid is too large to compute.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A numerical supremum was attained on the boundary of the search region.
class InconclusiveSupremumError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (coefficient files, flag values).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace dbar
