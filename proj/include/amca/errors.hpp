#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amca {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not conform (block counts, physical sizes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A structural requirement of an operation is not met: wrong system form,
// singular superdiagonal block, non-scalar blocks on a scalar path, ...
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The linear system for the gain has no solution within tolerance.
// `inconclusive` is set when the rank test also failed: sufficiency does not
// apply, so the failure says nothing about solvability of the problem itself.
class UnsolvableError : public Error {
 public:
  UnsolvableError(const std::string& what, double residual, bool inconclusive)
      : Error(what), residual_(residual), inconclusive_(inconclusive) {}

  double residual() const noexcept { return residual_; }
  bool inconclusive() const noexcept { return inconclusive_; }

 private:
  double residual_;
  bool inconclusive_;
};

// A computed result failed its a-posteriori check (similarity, solvent residual)
// or a decomposition broke down.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double residual = 0.0)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Solvent set cannot generate a monic matrix polynomial (singular block Vandermonde).
class SolventSetError : public Error {
 public:
  using Error::Error;
};

}  // namespace amca
