#ifndef MVSF_VERIFY_HPP
#define MVSF_VERIFY_HPP

#include <functional>
#include <vector>

#include "mvsf/spherical.hpp"

namespace mvsf {
namespace verify {

/// Relative eigen-equation residuals on a t-grid.
struct ResidualReport {
  std::vector<double> grid;
  std::vector<double> d_residual;
  std::vector<double> e_residual;
  double max_d = 0.0;
  double max_e = 0.0;
};

/// Jet provider: fills H(t), H'(t), H''(t).
using JetFn = std::function<void(double, Eigen::VectorXcd*, Eigen::VectorXcd*,
                                 Eigen::VectorXcd*)>;

/// |DH - lambda H| / (|lambda H| + |H| + 1) with
/// DH = 4t^2 H'' - 8t^2/(1-t) H' + 4t/(1-t)^2 (C0+C1) H.
ResidualReport d_residual(const spherical::FamilyDescriptor& fam,
                          const std::vector<double>& grid);
ResidualReport d_residual_jet(int ell, const cplx& lambda, const JetFn& jet,
                              const std::vector<double>& grid);

/// |EH - mu H| with EH = -4t A0 H' + 4/(1-t) C0 H - 4t/(1-t) C1 H,
/// same relative normalization.
ResidualReport e_residual(const spherical::FamilyDescriptor& fam,
                          const std::vector<double>& grid);
ResidualReport e_residual_jet(int ell, const cplx& mu, const JetFn& jet,
                              const std::vector<double>& grid);

/// Scaled t -> 0 limit of the decoupled coordinates, extrapolated from
/// t in {1e-3, 1e-4, 1e-5}, against the closed form:
/// a_i (i+1)_{i+1} / (2p-1)_{i+1} for Re(2p) > 1, and
/// -a_i G(2i+2)/G(i+1)^2 for the log scaling at 2p = 1.
struct EtaReport {
  Eigen::VectorXcd extrapolated;
  Eigen::VectorXcd closed_form;
  double max_dev = 0.0;  // max_i |delta_i| / (1 + |closed_i|)
};
EtaReport eta_limit(const spherical::FamilyDescriptor& fam);

/// Scaled limit of an arbitrary check-coordinate function under the same
/// scaling as the family's class (used for the E-image diagram check).
Eigen::VectorXcd eta_extrapolate(const spherical::FamilyDescriptor& fam,
                                 const std::function<Eigen::VectorXcd(double)>& f);

/// Residual |LHS - RHS|/(|RHS|+1) of the two-sided connection identity
/// between the t-basis and the (1-t)-basis hypergeometric solutions.
/// The optional condition output reports the cancellation factor of the
/// two LHS terms against the result; expect roughly 1e-16 * condition of
/// attainable residual in doubles.
double connection_check(const cplx& p, int i, double t, double* condition = nullptr);

/// Frobenius coefficients F_j of t^p sum F_j t^j from the three-term
/// recursion, plus a small-t evaluator.
class SeriesOracle {
 public:
  SeriesOracle(int ell, const cplx& p, const Eigen::VectorXcd& F0, int n_terms);

  /// t^p sum_j F_j t^j; monitors the tail and requires t <= 0.5.
  Eigen::VectorXcd eval(double t) const;

  const std::vector<Eigen::VectorXcd>& coefficients() const { return coef_; }

 private:
  int ell_;
  cplx p_;
  std::vector<Eigen::VectorXcd> coef_;
};

/// Integrate the coupled second-order system 4t^2 h'' - 8t^2/(1-t) h' +
/// 4t/(1-t)^2 (C0+C1) h = lambda h from (t0, H0, H0') to t1 with an
/// embedded Dormand-Prince 5(4) pair, relative tolerance 1e-10.
Eigen::VectorXcd ode_oracle(int ell, const cplx& lambda, const cplx& mu,
                            double t0, const Eigen::VectorXcd& H0,
                            const Eigen::VectorXcd& H0prime, double t1);

/// Evaluation of the tabulated closed forms for ell <= 2, including
/// the logarithmic exceptional points. Resolves equivalent labels before
/// giving up with PrintedPole.
Eigen::VectorXcd closed_form_oracle(int ell, int k, const cplx& p, double t);

}  // namespace verify
}  // namespace mvsf

#endif  // MVSF_VERIFY_HPP
