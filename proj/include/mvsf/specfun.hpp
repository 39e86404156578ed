#ifndef MVSF_SPECFUN_HPP
#define MVSF_SPECFUN_HPP

#include <complex>

#include "mvsf/errors.hpp"

namespace mvsf {

using cplx = std::complex<double>;

/// Result of a truncated hypergeometric partial sum.
struct HyperSeriesResult {
  cplx value{0.0, 0.0};
  int terms_used = 0;              // >= 1
  double trunc_estimate = 0.0;     // magnitude of the last added term
};

namespace specfun {

/// Relative stopping tolerance for all series in this header.
inline constexpr double kRelTol = 1e-16;
/// Hard cap on series terms.
inline constexpr int kMaxTerms = 100000;

/// True when x is exactly a nonpositive integer (no tolerance: callers snap
/// parameters before relying on termination).
bool is_nonpos_int(const cplx& x);

/// Rising factorial (x)_n as a running product, so zeros stay exact.
cplx pochhammer(const cplx& x, int n);

/// Principal-branch log Gamma for complex arguments, Lanczos approximation
/// with the reflection formula for Re z < 0.5.
cplx log_gamma(cplx z);

/// Digamma for complex arguments: recurrence into Re z >= 8, then the
/// asymptotic Bernoulli series.
cplx digamma(cplx z);

/// Gauss 2F1(a,b;c;z) by direct summation, z in [0,1). Exact polynomial when
/// a or b is a nonpositive integer. Stops when the term magnitude falls below
/// kRelTol * |partial sum| twice in a row.
HyperSeriesResult gauss2f1(const cplx& a, const cplx& b, const cplx& c, double z);

/// d^order/dz^order of 2F1 via contiguous parameter shifts, order 1 or 2.
cplx gauss2f1_deriv(const cplx& a, const cplx& b, const cplx& c, double z, int order);

/// 2F1(a,b;c;z) for z near 1, routed through the z -> 1-z connection
/// formulas. Handles the generic case and the logarithmic cases where
/// c-a-b is an integer. Falls back to direct summation when the series
/// terminates or z is small.
HyperSeriesResult gauss2f1_near1(const cplx& a, const cplx& b, const cplx& c, double z);

/// Terminating 3F2 at unit argument; a1 must be a nonpositive integer.
cplx f32_terminating(int a1, const cplx& a2, const cplx& a3, const cplx& b1, const cplx& b2);

/// Gauss summation 2F1(a,b;c;1) = G(c)G(c-a-b)/(G(c-a)G(c-b)), Re(c-a-b) > 0.
cplx gauss_sum_at_1(const cplx& a, const cplx& b, const cplx& c);

}  // namespace specfun
}  // namespace mvsf

#endif  // MVSF_SPECFUN_HPP
