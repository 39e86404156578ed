#ifndef MVSF_BISPECTRAL_HPP
#define MVSF_BISPECTRAL_HPP

#include <Eigen/Dense>
#include <vector>

#include "mvsf/spherical.hpp"

namespace mvsf {
namespace bispectral {

/// Banded matrices of the three-term recursion in p:
/// A Phi(t,p-1) + B Phi(t,p) + C Phi(t,p+1) = (t^2+1)/t Phi(t,p).
/// A is upper (diagonals 0..+2), B tridiagonal, C lower (diagonals -2..0);
/// entries outside the bands are exactly zero.
struct RecursionTriple {
  int ell = 0;
  cplx p{0.0, 0.0};
  Eigen::MatrixXcd A, B, C;
  double fit_residual = 0.0;  // max relative residual on the fitting grid
  double condition = 0.0;     // worst row-block design condition
};

/// Chebyshev-spaced fitting grid, the default for fit_recursion.
std::vector<double> chebyshev_grid(int n, double lo = 0.2, double hi = 0.9);

/// Least-squares fit of the banded unknowns over the grid equations.
/// Normal equations with column scaling; QR fallback when the condition
/// exceeds 1e8. Beyond 1e10 the design is rank deficient (coinciding Phi
/// rows at parameters with equivalent families); the minimal-norm solution
/// is returned when it is consistent, IllConditioned is thrown otherwise.
RecursionTriple fit_recursion(int ell, const cplx& p, const std::vector<double>& t_grid);

/// Diagnostic: fit full (unbanded) matrices and report the largest entry
/// outside the conjectured bands, relative to the largest entry overall.
double fit_offband_leakage(int ell, const cplx& p, const std::vector<double>& t_grid);

/// Hard-coded rational reference tables for ell in {0, 1, 3, 4}.
/// Throws PrintedPole when p hits a table denominator.
RecursionTriple reference_tables(int ell, const cplx& p);

/// Max relative residual of the recursion identity on a probe grid.
double verify_recursion(int ell, const cplx& p, const RecursionTriple& triple,
                        const std::vector<double>& t_probe_grid);

/// Entrywise relative deviation between two triples on the identifiable
/// part: wherever equivalent families make Phi rows coincide (at p-1, p or
/// p+1), only the sums of the corresponding columns are determined, so
/// those columns are collapsed before comparing.
double compare_triples(int ell, const cplx& p, const RecursionTriple& a,
                       const RecursionTriple& b);

}  // namespace bispectral
}  // namespace mvsf

#endif  // MVSF_BISPECTRAL_HPP
