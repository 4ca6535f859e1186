#pragma once

#include <stdexcept>
#include <string>

namespace fock {

// Argument outside the domain of the mathematical object (p <= 1, x <= 0, |c| >= 1 ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Gaussian integrand whose real quadratic part is not positive definite
// (equivalently |c| >= 1 for a quadratic exponential).
class NotIntegrable : public DomainError {
 public:
  using DomainError::DomainError;
};

// Refining the radial rule moved the integral by more than the requested tolerance.
class GridTooCoarse : public std::runtime_error {
 public:
  GridTooCoarse(const std::string& what, double coarse, double fine)
      : std::runtime_error(what), coarse_(coarse), fine_(fine) {}
  double coarse() const { return coarse_; }
  double fine() const { return fine_; }

 private:
  double coarse_;
  double fine_;
};

class ZeroFunction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fock
