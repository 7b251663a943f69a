#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace stark {

using Complex = std::complex<double>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the supported domain (e.g. Bessel order beyond the limit).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point within tolerance of a pole of a meromorphic function.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, int index) : Error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// Evaluation point on a branch cut (a band interval of the real axis).
class BranchError : public Error {
 public:
  using Error::Error;
};

/// Real energy passed to a physical-sheet quantity; the spectrum fills the real axis.
class ContinuousSpectrumError : public BranchError {
 public:
  using BranchError::BranchError;
};

/// Point outside the strip (or inside its edge exclusion zone) of a continued branch.
class StripError : public Error {
 public:
  using Error::Error;
};

/// Krein determinant vanishes at the evaluation point.
class SingularKreinError : public Error {
 public:
  using Error::Error;
};

/// Impurity level aligned with a band edge; mode selection is ill-defined.
class DegenerateMuError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<Complex> trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<Complex>& trace() const noexcept { return trace_; }

 private:
  std::vector<Complex> trace_;
};

/// Root left the open half-strip it was searched in.
class StripEscapeError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Internal consistency check of the model failed; indicates a numerics bug.
class ModelInconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace stark
