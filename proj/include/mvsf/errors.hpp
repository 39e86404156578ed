#ifndef MVSF_ERRORS_HPP
#define MVSF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mvsf {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- series kernels ---------------------------------------------------------

/// A Pochhammer factor in a denominator vanished before the series terminated.
class PoleBeforeTermination : public Error {
 public:
  using Error::Error;
};

/// The series reached the term cap with the tail estimate above tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Gauss summation at unit argument requested with Re(c-a-b) <= 0.
class DivergentAtOne : public Error {
 public:
  using Error::Error;
};

// --- representation matrices ------------------------------------------------

/// The Hahn matrix U failed to invert; signals a kernel bug, never expected.
class SingularU : public Error {
 public:
  using Error::Error;
};

/// The eigenvector product formula hit a vanishing denominator.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

// --- geometry ----------------------------------------------------------------

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

/// Point lies on the axis {(0,r): r > 1}, outside the chart in use.
class OutOfChart : public Error {
 public:
  using Error::Error;
};

// --- spherical families -------------------------------------------------------

/// No eigenvector construction is available for the requested parameters.
class DegenerateEigenvector : public Error {
 public:
  using Error::Error;
};

/// The P/Q decomposition is not unique (or unavailable) for integer 2p.
class IntegerTwoP : public Error {
 public:
  using Error::Error;
};

// --- verification -------------------------------------------------------------

/// The scaled limit extrapolation diverged; the branch was misclassified.
class ScalingMismatch : public Error {
 public:
  using Error::Error;
};

/// The leading factor j(j-1+2p) of the coefficient recursion vanished.
class RecursionPole : public Error {
 public:
  using Error::Error;
};

/// The adaptive integrator could not meet its tolerance.
class StepFailure : public Error {
 public:
  using Error::Error;
};

/// Requested a tabulated closed form at a pole of its coefficients.
class PrintedPole : public Error {
 public:
  using Error::Error;
};

// --- regression ----------------------------------------------------------------

/// Design matrix condition exceeded the hard limit.
class IllConditioned : public Error {
 public:
  using Error::Error;
};

}  // namespace mvsf

#endif  // MVSF_ERRORS_HPP
