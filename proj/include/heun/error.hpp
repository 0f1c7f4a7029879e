#pragma once

#include <stdexcept>
#include <string>

namespace heun {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs outside the mathematical domain of an operation (E >= 0, A = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach its target. `stage()` names the step
/// that failed so callers (and the CLI) can report it.
class SolverError : public Error {
 public:
  SolverError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Raised by asymptotic-series evaluation when the point is too close to the
/// interior for optimal truncation to meet the requested accuracy.
class AsymptoticRegimeError : public Error {
 public:
  AsymptoticRegimeError(double relative_estimate, const std::string& what)
      : Error(what), relative_estimate_(relative_estimate) {}
  double relative_estimate() const noexcept { return relative_estimate_; }

 private:
  double relative_estimate_;
};

}  // namespace heun
