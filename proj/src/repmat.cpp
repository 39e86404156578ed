#include "mvsf/repmat.hpp"

#include <cmath>
#include <sstream>

namespace mvsf {
namespace repmat {

using specfun::f32_terminating;

Dpi build_dpi(int ell) {
  const int n = ell + 1;
  Dpi d;
  d.H1 = Eigen::MatrixXd::Zero(n, n);
  d.X1 = Eigen::MatrixXd::Zero(n, n);
  d.X2 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i <= ell; ++i) {
    d.H1(i, i) = ell - 2 * i;
    // dpi(X1) v_i = (l-i+1) v_{i-1}, dpi(X2) v_i = (i+1) v_{i+1}.
    if (i >= 1) d.X1(i - 1, i) = ell - i + 1;
    if (i + 1 <= ell) d.X2(i + 1, i) = i + 1;
  }
  return d;
}

StructureMatrices structure_matrices(int ell) {
  const int n = ell + 1;
  StructureMatrices s;
  s.ell = ell;
  s.A0 = Eigen::MatrixXi::Zero(n, n);
  s.C0 = Eigen::MatrixXi::Zero(n, n);
  s.C1 = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i <= ell; ++i) {
    s.A0(i, i) = ell - 2 * i;
    const int c0 = i * (ell - i + 1);
    if (i >= 1) s.C0(i, i - 1) = c0;
    s.C0(i, i) = -c0;
    const int c1 = (i + 1) * (ell - i);
    if (i + 1 <= ell) s.C1(i, i + 1) = c1;
    s.C1(i, i) = -c1;
  }
  return s;
}

HahnTransform hahn_transform(int ell) {
  const int n = ell + 1;
  HahnTransform h;
  h.ell = ell;
  h.U.resize(n, n);
  for (int i = 0; i <= ell; ++i) {
    for (int j = 0; j <= ell; ++j) {
      h.U(i, j) = f32_terminating(-j, cplx(-i), cplx(j + 1.0), cplx(1.0),
                                  cplx(static_cast<double>(-ell)))
                      .real();
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(h.U);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd X = lu.solve(id);
  // One refinement step.
  X += lu.solve(id - h.U * X);
  if (!X.allFinite()) throw SingularU("hahn_transform: U inverse is not finite");
  h.Uinv = X;
  h.cond_estimate = h.U.cwiseAbs().rowwise().sum().maxCoeff() *
                    h.Uinv.cwiseAbs().rowwise().sum().maxCoeff();
  return h;
}

Eigen::MatrixXcd l_matrix(int ell, const cplx& p) {
  const StructureMatrices s = structure_matrices(ell);
  return 4.0 * s.C0d().cast<cplx>() - 4.0 * p * s.A0d().cast<cplx>();
}

cplx mu_value(int ell, const cplx& p, int k) {
  return -4.0 * p * static_cast<double>(ell - 2 * k) -
         cplx(4.0 * k * (ell - k + 1));
}

std::vector<cplx> mu_values(int ell, const cplx& p) {
  std::vector<cplx> mu(ell + 1);
  for (int k = 0; k <= ell; ++k) mu[k] = mu_value(ell, p, k);
  return mu;
}

Eigen::VectorXcd l_eigenvector(int ell, const cplx& p, int k) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(ell + 1);
  v(k) = 1.0;
  cplx prod(1.0, 0.0);
  for (int i = 1; i <= ell - k; ++i) {
    const cplx den = static_cast<double>(i) *
                     (cplx(ell + 1.0) - 2.0 * p - 2.0 * k - static_cast<double>(i));
    if (std::abs(den) < 1e-9 * static_cast<double>(i)) {
      std::ostringstream os;
      os << "l_eigenvector: vanishing denominator at ell=" << ell << " k=" << k
         << " i=" << i << " p=(" << p.real() << "," << p.imag() << ")";
      throw DegenerateDenominator(os.str());
    }
    prod *= cplx(static_cast<double>(k + i) * (ell + 1 - i - k)) / den;
    v(k + i) = prod;
  }
  return v;
}

std::vector<std::pair<int, int>> mu_degeneracies(int ell, const cplx& p) {
  std::vector<std::pair<int, int>> out;
  const std::vector<cplx> mu = mu_values(ell, p);
  double scale = 1.0;
  for (const cplx& m : mu) scale = std::max(scale, std::abs(m));
  for (int k = 1; k <= ell; ++k)
    for (int kp = 0; kp < k; ++kp)
      if (std::abs(mu[k] - mu[kp]) < 1e-9 * scale) out.emplace_back(k, kp);
  return out;
}

LEigenData l_eigendata(int ell, const cplx& p) {
  LEigenData d;
  d.p = p;
  d.mu = mu_values(ell, p);
  d.degenerate_pairs = mu_degeneracies(ell, p);
  d.vectors.resize(ell + 1);
  for (int k = 0; k <= ell; ++k) {
    int kk = k;
    for (const auto& pr : d.degenerate_pairs)
      if (pr.second == k) kk = pr.first;  // shared generator at the larger index
    d.vectors[k] = l_eigenvector(ell, p, kk);
  }
  return d;
}

Eigen::VectorXcd l_eigenvector_for_mu(int ell, const cplx& p, const cplx& mu) {
  const std::vector<cplx> all = mu_values(ell, p);
  double scale = 1.0 + std::abs(mu);
  int best = -1;
  for (int j = 0; j <= ell; ++j) {
    if (std::abs(all[j] - mu) < 1e-9 * scale) best = j;  // keep the largest match
  }
  if (best < 0) {
    std::ostringstream os;
    os << "l_eigenvector_for_mu: mu=(" << mu.real() << "," << mu.imag()
       << ") is not an eigenvalue of L(p) at ell=" << ell;
    throw DegenerateEigenvector(os.str());
  }
  return l_eigenvector(ell, p, best);
}

}  // namespace repmat
}  // namespace mvsf
