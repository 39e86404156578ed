#ifndef MVSF_REPMAT_HPP
#define MVSF_REPMAT_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "mvsf/specfun.hpp"

namespace mvsf {
namespace repmat {

/// sl(2) generators in the weight basis {v_i} of the l-th symmetric power:
/// H1 diagonal, X1 superdiagonal, X2 subdiagonal.
struct Dpi {
  Eigen::MatrixXd H1, X1, X2;
};

/// Integer structure matrices of the radial operators D and E.
struct StructureMatrices {
  int ell = 0;
  Eigen::MatrixXi A0;  // diag(l - 2i)
  Eigen::MatrixXi C0;  // lower bidiagonal, rows sum to zero
  Eigen::MatrixXi C1;  // upper bidiagonal, rows sum to zero

  Eigen::MatrixXd A0d() const { return A0.cast<double>(); }
  Eigen::MatrixXd C0d() const { return C0.cast<double>(); }
  Eigen::MatrixXd C1d() const { return C1.cast<double>(); }
};

/// Hahn polynomial value matrix U and its inverse. Columns of U are the
/// eigenvectors of C0+C1 with eigenvalues -j(j+1).
struct HahnTransform {
  int ell = 0;
  Eigen::MatrixXd U;
  Eigen::MatrixXd Uinv;
  double cond_estimate = 0.0;
};

/// Eigenstructure of L(p) = 4 C0 - 4p A0 for one type l.
struct LEigenData {
  cplx p;
  std::vector<cplx> mu;                        // mu_k, k = 0..l
  std::vector<Eigen::VectorXcd> vectors;       // one generator per eigenvalue
  std::vector<std::pair<int, int>> degenerate_pairs;  // (k, k') with k > k'
};

Dpi build_dpi(int ell);

StructureMatrices structure_matrices(int ell);

/// U[i][j] = 3F2(-j,-i,j+1; 1,-l; 1); inverse by partial-pivot LU plus one
/// step of iterative refinement.
HahnTransform hahn_transform(int ell);

/// L(p) = 4 C0 - 4p A0, lower triangular.
Eigen::MatrixXcd l_matrix(int ell, const cplx& p);

/// mu_k(p) = -4p(l-2k) - 4k(l-k+1), k = 0..l.
std::vector<cplx> mu_values(int ell, const cplx& p);

cplx mu_value(int ell, const cplx& p, int k);

/// Eigenvector v_k of L(p) by the product formula: v_i = 0 for i < k,
/// v_k = 1. Throws DegenerateDenominator when a factor l+1-2p-2k-i
/// vanishes (within 1e-9), which happens exactly when mu_k is a double
/// eigenvalue and k is the smaller index of its pair.
Eigen::VectorXcd l_eigenvector(int ell, const cplx& p, int k);

/// List of index pairs (k, k') with k > k' and mu_k(p) = mu_k'(p).
std::vector<std::pair<int, int>> mu_degeneracies(int ell, const cplx& p);

/// Full eigendata; at a double eigenvalue both indices share the unique
/// generator (the product formula at the larger index).
LEigenData l_eigendata(int ell, const cplx& p);

/// The eigenvector of L(p) whose eigenvalue equals mu, selected by value.
/// At a double eigenvalue the larger index is used, so the product formula
/// never degenerates. Throws DegenerateEigenvector if mu is not an
/// eigenvalue of L(p).
Eigen::VectorXcd l_eigenvector_for_mu(int ell, const cplx& p, const cplx& mu);

}  // namespace repmat
}  // namespace mvsf

#endif  // MVSF_REPMAT_HPP
