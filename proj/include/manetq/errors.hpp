#pragma once

#include <stdexcept>
#include <string>

namespace manetq {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (rational grammar, metric names, grids).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A value violates a type invariant (n = 0, rho <= 0, p outside [0,1], ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Valid parameters outside the domain where a formula was derived.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Metric evaluated under an asymptotic regime it has no limit in.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// Quality target that no node count can meet.
class Infeasible : public Error {
 public:
  Infeasible(const std::string& what, double max_attainable)
      : Error(what), max_attainable_(max_attainable) {}

  double max_attainable() const noexcept { return max_attainable_; }

 private:
  double max_attainable_;
};

}  // namespace manetq
