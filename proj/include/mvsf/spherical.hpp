#ifndef MVSF_SPHERICAL_HPP
#define MVSF_SPHERICAL_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "mvsf/repmat.hpp"

namespace mvsf {
namespace spherical {

/// Classification of 2p after the mirror normalization Re(2p) >= 1.
enum class TwoPClass { Generic, IntegerGE1, IntegerLE0, HalfLine };

/// Branch of the explicit hypergeometric formula for one family.
enum class Branch { GenericHyper, IntegerMixed };

struct SpectralParams {
  int ell = 0;
  int k = 0;                  // family index, 0..ell, after mirroring
  cplx p{0.0, 0.0};           // normalized so Re(2p) >= 1; snapped when 2p integer
  cplx lambda{0.0, 0.0};      // 4p(p-1)
  cplx mu{0.0, 0.0};          // mu_k(p)
  TwoPClass two_p_class = TwoPClass::Generic;
  bool mirrored = false;             // (p,k) -> (1-p, l-k) was applied
  bool near_integer_warning = false; // 2p within (1e-9, 1e-5) of an integer
};

/// A fully built spherical-function family of type l.
struct FamilyDescriptor {
  SpectralParams params;
  Eigen::VectorXcd alpha;  // U alpha is the L(1-p) eigenvector of eigenvalue mu
  Eigen::VectorXcd a;      // coefficients of the explicit hypergeometric components, a0 = 1
  Branch branch = Branch::GenericHyper;
  cplx omega_eig{0.0, 0.0};      // lambda/4 + mu + l(l+2)
  cplx omega_bar_eig{0.0, 0.0};  // lambda/4
  cplx v{0.0, 0.0};              // principal series parameter
  int r = 0;                     // principal series parameter, 2k - l
  bool unitarizable = false;
  bool degenerate_a0 = false;    // |a0| ~ 0 before rescaling; no rescale applied
  repmat::HahnTransform hahn;
};

struct EvalDiagnostics {
  std::vector<HyperSeriesResult> series;  // one entry per component
  std::vector<std::string> warnings;
};

/// Value of H(t) together with the decoupled coordinates and diagnostics.
struct VectorSample {
  double t = 0.0;
  Eigen::VectorXcd H;
  Eigen::VectorXcd check_H;  // U^{-1} H
  EvalDiagnostics diagnostics;
};

/// Polynomial data of H = (t^p P(t) + t^{1-p} Q(t)) / (1-t)^{l+1}.
/// Row i of P holds the monomial coefficients of P_i, degree l.
struct PQDecomposition {
  Eigen::MatrixXcd P;
  Eigen::MatrixXcd Q;
};

/// Compute lambda, mu_k and the branch class; mirrors (p,k) -> (1-p, l-k)
/// when Re(2p) < 1 so the explicit formulas always apply.
SpectralParams classify(int ell, int k, const cplx& p);

/// Assemble the family: eigenvector of L(1-p) selected by the eigenvalue
/// mu_k(p), alpha = U^{-1} w, coefficients a_i, normalization a0 = 1.
FamilyDescriptor build_family(int ell, int k, const cplx& p);

/// Decoupled coordinates check-H(t), t in [1e-6, 1 - 1e-9].
Eigen::VectorXcd eval_check(const FamilyDescriptor& fam, double t);
Eigen::VectorXcd eval_check(const FamilyDescriptor& fam, double t, EvalDiagnostics* diag);

/// check-H together with its first two t-derivatives (analytic, by contiguous
/// parameter shifts and the product rule).
void eval_check_jet(const FamilyDescriptor& fam, double t, Eigen::VectorXcd* f,
                    Eigen::VectorXcd* f1, Eigen::VectorXcd* f2);

/// H = U check-H with diagnostics.
VectorSample eval_H(const FamilyDescriptor& fam, double t);

/// H, H', H''.
void eval_H_jet(const FamilyDescriptor& fam, double t, Eigen::VectorXcd* H,
                Eigen::VectorXcd* H1, Eigen::VectorXcd* H2);

/// Split H = (t^p P + t^{1-p} Q)/(1-t)^{l+1}; requires 2p not an integer.
PQDecomposition pq_decomposition(const FamilyDescriptor& fam);

/// All (p', k') labeling the same spherical function.
std::vector<std::pair<cplx, int>> equivalents(int ell, const cplx& p, int k);

bool is_unitarizable(int ell, const cplx& p, int k);

/// Adjoint family parameters: k' = k, p' = (l-2k)/2 + 1 - conj(p).
std::pair<cplx, int> adjoint_params(int ell, const cplx& p, int k);

/// Principal series labels v = i(l-2k+2-4p), r = 2k-l.
std::pair<cplx, int> principal_series_params(int ell, const cplx& p, int k);

/// Matrix with row k equal to H_k(t, p).
Eigen::MatrixXcd phi_matrix(int ell, const cplx& p, double t);

/// Richardson extrapolation of H(t, .) across a real exceptional p from
/// families at p +- delta, p +- 2 delta. Verification path; the direct
/// construction above is exact at integer 2p already.
Eigen::VectorXcd eval_H_richardson(int ell, int k, const cplx& p, double t,
                                   double delta = 1e-4);

}  // namespace spherical
}  // namespace mvsf

#endif  // MVSF_SPHERICAL_HPP
