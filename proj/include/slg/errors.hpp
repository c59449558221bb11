#pragma once

#include <stdexcept>
#include <string>

namespace slg {

/// Base class of every numeric failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of the operation (zero, pole, log singularity).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point lies in the wrong Stokes sector (or on a line) for the
/// requested form.
class SectorError : public Error {
 public:
  using Error::Error;
};

/// Quadrature, continued fraction or series failed to converge within its
/// node/term budget.
class QuadratureFailure : public Error {
 public:
  QuadratureFailure(const std::string& what, std::string diagnostics)
      : Error(what + (diagnostics.empty() ? "" : " [" + diagnostics + "]")),
        diagnostics_(std::move(diagnostics)) {}
  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

/// A Mellin-Barnes integrand that does not decay along the contour.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// NaN or infinity escaped an operation.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace slg
