#include "mvsf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mvsf {
namespace verify {

using spherical::FamilyDescriptor;
using specfun::gauss2f1;
using specfun::gauss2f1_near1;
using specfun::pochhammer;

namespace {

void check_grid(const std::vector<double>& grid) {
  for (double t : grid)
    if (!(t >= 0.02 && t <= 0.98))
      throw Error("residual grid must lie in [0.02, 0.98]");
}

double point_residual(const Eigen::VectorXcd& op_h, const cplx& eig,
                      const Eigen::VectorXcd& h) {
  double worst = 0.0;
  for (int i = 0; i < h.size(); ++i) {
    const double den = std::abs(eig * h(i)) + std::abs(h(i)) + 1.0;
    worst = std::max(worst, std::abs(op_h(i) - eig * h(i)) / den);
  }
  return worst;
}

}  // namespace

ResidualReport d_residual_jet(int ell, const cplx& lambda, const JetFn& jet,
                              const std::vector<double>& grid) {
  check_grid(grid);
  const repmat::StructureMatrices s = repmat::structure_matrices(ell);
  const Eigen::MatrixXcd CC = (s.C0d() + s.C1d()).cast<cplx>();
  ResidualReport rep;
  rep.grid = grid;
  Eigen::VectorXcd H, H1, H2;
  for (double t : grid) {
    jet(t, &H, &H1, &H2);
    const Eigen::VectorXcd DH = 4.0 * t * t * H2 -
                                8.0 * t * t / (1.0 - t) * H1 +
                                4.0 * t / ((1.0 - t) * (1.0 - t)) * (CC * H);
    rep.d_residual.push_back(point_residual(DH, lambda, H));
    rep.max_d = std::max(rep.max_d, rep.d_residual.back());
  }
  return rep;
}

ResidualReport d_residual(const FamilyDescriptor& fam, const std::vector<double>& grid) {
  return d_residual_jet(
      fam.params.ell, fam.params.lambda,
      [&fam](double t, Eigen::VectorXcd* H, Eigen::VectorXcd* H1, Eigen::VectorXcd* H2) {
        spherical::eval_H_jet(fam, t, H, H1, H2);
      },
      grid);
}

ResidualReport e_residual_jet(int ell, const cplx& mu, const JetFn& jet,
                              const std::vector<double>& grid) {
  check_grid(grid);
  const repmat::StructureMatrices s = repmat::structure_matrices(ell);
  const Eigen::MatrixXcd A0 = s.A0d().cast<cplx>();
  const Eigen::MatrixXcd C0 = s.C0d().cast<cplx>();
  const Eigen::MatrixXcd C1 = s.C1d().cast<cplx>();
  ResidualReport rep;
  rep.grid = grid;
  Eigen::VectorXcd H, H1, H2;
  for (double t : grid) {
    jet(t, &H, &H1, &H2);
    const Eigen::VectorXcd EH = -4.0 * t * (A0 * H1) +
                                4.0 / (1.0 - t) * (C0 * H) -
                                4.0 * t / (1.0 - t) * (C1 * H);
    rep.e_residual.push_back(point_residual(EH, mu, H));
    rep.max_e = std::max(rep.max_e, rep.e_residual.back());
  }
  return rep;
}

ResidualReport e_residual(const FamilyDescriptor& fam, const std::vector<double>& grid) {
  return e_residual_jet(
      fam.params.ell, fam.params.mu,
      [&fam](double t, Eigen::VectorXcd* H, Eigen::VectorXcd* H1, Eigen::VectorXcd* H2) {
        spherical::eval_H_jet(fam, t, H, H1, H2);
      },
      grid);
}

namespace {

bool family_log_case(const FamilyDescriptor& fam) {
  return fam.params.two_p_class == spherical::TwoPClass::IntegerGE1 &&
         std::llround(2.0 * fam.params.p.real()) == 1;
}

/// Sample abscissas: the log scaling carries both 1/log t and t/log t
/// corrections and needs one extra point to resolve them.
std::vector<double> eta_samples(bool log_case) {
  if (log_case) return {1e-3, 1e-4, 1e-5, 1e-6};
  return {1e-3, 1e-4, 1e-5};
}

/// The ODE's indicial structure fixes the correction exponents, so the limit
/// is the constant mode of a known model: {1, 1/log t, t, t/log t} at 2p = 1
/// and {1, t^{2p-1}, t} otherwise.
Eigen::VectorXcd extrapolate_samples(const FamilyDescriptor& fam,
                                     const std::vector<Eigen::VectorXcd>& v,
                                     const std::vector<double>& ts) {
  const int n = v[0].size();
  const int m = static_cast<int>(ts.size());
  Eigen::VectorXcd out(n);
  for (int i = 0; i < n; ++i) {
    const double a0 = std::abs(v[0](i)), a1 = std::abs(v[1](i)), a2 = std::abs(v[2](i));
    if (a2 > 8.0 * a1 + 1.0 && a1 > 8.0 * a0 + 1.0) {
      throw ScalingMismatch("eta extrapolation diverges: branch misclassified");
    }
  }
  Eigen::MatrixXcd M(m, m);
  const bool log_case = family_log_case(fam);
  const cplx expo = 2.0 * fam.params.p - 1.0;
  const bool resonant = !log_case && std::abs(expo - 1.0) < 1e-6;
  for (int j = 0; j < m; ++j) {
    const double t = ts[j];
    M(j, 0) = 1.0;
    if (log_case) {
      M(j, 1) = 1.0 / std::log(t);
      M(j, 2) = t;
      M(j, 3) = t / std::log(t);
    } else {
      // 2p-1 = 1 collides with the t mode; the resonance carries t log t.
      M(j, 1) = resonant ? cplx(t * std::log(t)) : std::pow(cplx(t), expo);
      M(j, 2) = t;
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  Eigen::VectorXcd rhs(m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) rhs(j) = v[j](i);
    out(i) = lu.solve(rhs)(0);
  }
  return out;
}

}  // namespace

Eigen::VectorXcd eta_extrapolate(const FamilyDescriptor& fam,
                                 const std::function<Eigen::VectorXcd(double)>& f) {
  const cplx p = fam.params.p;
  const bool log_case = family_log_case(fam);
  if (!log_case && !(2.0 * p.real() > 1.0 + 1e-9)) {
    throw ScalingMismatch("eta requires Re(2p) > 1 or 2p = 1");
  }
  const std::vector<double> ts = eta_samples(log_case);
  std::vector<Eigen::VectorXcd> v(ts.size());
  for (size_t j = 0; j < ts.size(); ++j) {
    const double t = ts[j];
    const cplx scale = log_case
                           ? 1.0 / (std::sqrt(t) * std::log(t))
                           : std::pow(cplx(t), p - 1.0);
    v[j] = scale * f(t);
  }
  return extrapolate_samples(fam, v, ts);
}

EtaReport eta_limit(const FamilyDescriptor& fam) {
  const int ell = fam.params.ell;
  const cplx p = fam.params.p;
  EtaReport rep;
  rep.extrapolated = eta_extrapolate(
      fam, [&fam](double t) { return spherical::eval_check(fam, t); });
  rep.closed_form.resize(ell + 1);
  const bool log_case = family_log_case(fam);
  for (int i = 0; i <= ell; ++i) {
    if (log_case) {
      rep.closed_form(i) = -fam.a(i) * std::tgamma(2.0 * i + 2.0) /
                           (std::tgamma(i + 1.0) * std::tgamma(i + 1.0));
    } else {
      rep.closed_form(i) = fam.a(i) * pochhammer(cplx(i + 1.0), i + 1) /
                           pochhammer(2.0 * p - 1.0, i + 1);
    }
  }
  for (int i = 0; i <= ell; ++i) {
    const double dev = std::abs(rep.extrapolated(i) - rep.closed_form(i)) /
                       (1.0 + std::abs(rep.closed_form(i)));
    rep.max_dev = std::max(rep.max_dev, dev);
  }
  return rep;
}

double connection_check(const cplx& p, int i, double t, double* condition) {
  const cplx two_p = 2.0 * p;
  const double m = std::round(two_p.real());
  if (std::abs(two_p - cplx(m)) < 1e-9 && m >= -i + 1 && m <= i + 1) {
    throw Error("connection_check: integer 2p must satisfy 2p > i+1 or 2p < -i+1");
  }
  const cplx num = pochhammer(cplx(i + 1.0), i + 1);
  const cplx term1 = num / pochhammer(1.0 - two_p, i + 1) *
                     gauss2f1(cplx(static_cast<double>(-i)), two_p - cplx(i + 1.0),
                              two_p, t)
                         .value;
  const cplx term2 = num / pochhammer(two_p - 1.0, i + 1) *
                     std::pow(cplx(t), 1.0 - two_p) *
                     gauss2f1(cplx(static_cast<double>(-i)),
                              1.0 - two_p - cplx(static_cast<double>(i)),
                              2.0 - two_p, t)
                         .value;
  const cplx rhs = std::pow(cplx(t), 1.0 - two_p) *
                   std::pow(cplx(1.0 - t), 2.0 * i + 1.0) *
                   gauss2f1_near1(cplx(i + 1.0), cplx(i + 2.0) - two_p,
                                  cplx(2.0 * i + 2.0), 1.0 - t)
                       .value;
  if (condition) {
    // Cancellation factor: how much larger the two sides' terms are than
    // the identity's value. Double precision delivers about 16 digits
    // minus log10 of this factor.
    *condition = (std::abs(term1) + std::abs(term2)) / (std::abs(rhs) + 1.0);
  }
  return std::abs(term1 + term2 - rhs) / (std::abs(rhs) + 1.0);
}

SeriesOracle::SeriesOracle(int ell, const cplx& p, const Eigen::VectorXcd& F0,
                           int n_terms)
    : ell_(ell), p_(p) {
  const repmat::StructureMatrices s = repmat::structure_matrices(ell);
  const Eigen::MatrixXcd CC = (s.C0d() + s.C1d()).cast<cplx>();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(ell + 1, ell + 1);
  coef_.reserve(n_terms + 1);
  coef_.push_back(F0);
  Eigen::VectorXcd fm2 = Eigen::VectorXcd::Zero(ell + 1);
  for (int j = 1; j <= n_terms; ++j) {
    const cplx lead = static_cast<double>(j) * (cplx(j - 1.0) + 2.0 * p);
    if (std::abs(lead) < 1e-12 * j) {
      std::ostringstream os;
      os << "series recursion pole at j=" << j << " (2p = " << 1 - j << ")";
      throw RecursionPole(os.str());
    }
    const cplx mid = 2.0 * p * cplx(2.0 * j - 1.0) + cplx(2.0 * (j - 1.0) * (j - 1.0));
    Eigen::VectorXcd fj = (mid * I - CC) * coef_.back() -
                          cplx(j - 1.0) * (2.0 * p + cplx(j - 2.0)) * fm2;
    fj /= lead;
    fm2 = coef_.back();
    coef_.push_back(fj);
  }
}

Eigen::VectorXcd SeriesOracle::eval(double t) const {
  if (!(t > 0.0 && t <= 0.5)) {
    throw Error("SeriesOracle::eval: valid for 0 < t <= 0.5");
  }
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(ell_ + 1);
  double tn = 1.0;
  double tail = 0.0;
  for (const auto& fj : coef_) {
    sum += tn * fj;
    tail = fj.cwiseAbs().maxCoeff() * tn;
    tn *= t;
  }
  if (tail > 1e-10 * (sum.cwiseAbs().maxCoeff() + 1.0)) {
    throw NoConvergence("SeriesOracle::eval: tail above tolerance; more terms needed");
  }
  return std::pow(cplx(t), p_) * sum;
}

Eigen::VectorXcd ode_oracle(int ell, const cplx& lambda, const cplx& /*mu*/,
                            double t0, const Eigen::VectorXcd& H0,
                            const Eigen::VectorXcd& H0prime, double t1) {
  if (!(t0 > 0.0 && t0 < 1.0 && t1 > 0.0 && t1 < 1.0)) {
    throw Error("ode_oracle: [t0, t1] must lie inside (0,1)");
  }
  const int n = ell + 1;
  const repmat::StructureMatrices s = repmat::structure_matrices(ell);
  const Eigen::MatrixXcd CC = (s.C0d() + s.C1d()).cast<cplx>();

  using Vec = Eigen::VectorXcd;
  auto rhs = [&](double t, const Vec& y) {
    Vec dy(2 * n);
    dy.head(n) = y.tail(n);
    const Vec h = y.head(n);
    const Vec w = y.tail(n);
    dy.tail(n) = (lambda * h - 4.0 * t / ((1.0 - t) * (1.0 - t)) * (CC * h)) /
                     (4.0 * t * t) +
                 2.0 / (1.0 - t) * w;
    return dy;
  };

  // Dormand-Prince 5(4) coefficients.
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double rel = 1e-10, abs_tol = 1e-12;
  double t = t0;
  Vec y(2 * n);
  y.head(n) = H0;
  y.tail(n) = H0prime;
  const double dir = t1 >= t0 ? 1.0 : -1.0;
  double h = dir * std::max(1e-6, std::abs(t1 - t0) / 100.0);
  Vec k1 = rhs(t, y);
  long steps = 0;
  while (dir * (t1 - t) > 1e-15) {
    if (++steps > 1000000) throw StepFailure("ode_oracle: step limit exceeded");
    if (dir * (t + h - t1) > 0.0) h = t1 - t;
    const Vec k2 = rhs(t + c2 * h, y + h * (a21 * k1));
    const Vec k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Vec k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec k7 = rhs(t + h, y5);
    const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double norm = 0.0;
    for (int i = 0; i < 2 * n; ++i) {
      const double sc = abs_tol + rel * std::max(std::abs(y(i)), std::abs(y5(i)));
      norm = std::max(norm, std::abs(err(i)) / sc);
    }
    if (norm <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;  // FSAL
    }
    const double fac = std::clamp(0.9 * std::pow(norm > 0 ? norm : 1e-16, -0.2), 0.2, 5.0);
    h *= fac;
    if (std::abs(h) < 1e-14) throw StepFailure("ode_oracle: step size underflow");
  }
  return y.head(n);
}

namespace {

using Eigen::VectorXcd;

bool near(const cplx& p, double v) { return std::abs(p - cplx(v)) < 1e-9; }

/// Hard-coded exceptional (logarithmic) closed forms. Returns true when
/// (ell, k, p) hits one.
bool exceptional_display(int ell, int k, const cplx& p, double t, VectorXcd* out) {
  const double lt = std::log(t);
  if (ell == 0 && near(p, 0.5)) {
    out->resize(1);
    (*out)(0) = std::sqrt(t) * lt / (t - 1.0);
    return true;
  }
  if (ell == 1) {
    if (near(p, 0.5)) {
      out->resize(2);
      (*out)(0) = 2.0 * std::sqrt(t) * (t * lt - t + 1.0) / ((t - 1.0) * (t - 1.0));
      (*out)(1) = -2.0 * std::sqrt(t) * (lt - t + 1.0) / ((t - 1.0) * (t - 1.0));
      return true;
    }
    if (k == 0 && near(p, 1.0)) {
      out->resize(2);
      (*out)(0) = -2.0 * t * (lt - t + 1.0) / ((t - 1.0) * (t - 1.0));
      (*out)(1) = 2.0 * (t * lt - t + 1.0) / ((t - 1.0) * (t - 1.0));
      return true;
    }
    return false;
  }
  if (ell == 2) {
    const double d3 = (t - 1.0) * (t - 1.0) * (t - 1.0);
    if (k == 2 && near(p, -0.5)) {
      out->resize(3);
      (*out)(0) = 3.0 * std::pow(t, 1.5) * (2.0 * lt + t * t - 4.0 * t + 3.0) / (2.0 * d3);
      (*out)(1) = -3.0 * std::sqrt(t) * (2.0 * t * lt - t * t + 1.0) / d3;
      (*out)(2) = 3.0 * std::pow(t, -0.5) * (2.0 * t * t * lt - 3.0 * t * t + 4.0 * t - 1.0) /
                  (2.0 * d3);
      return true;
    }
    if ((k == 1 || k == 2) && near(p, 0.0)) {
      out->resize(3);
      (*out)(0) = -3.0 * t * (2.0 * t * lt - t * t + 1.0) / d3;
      (*out)(1) = 6.0 * t * (t * lt + lt - 2.0 * t + 2.0) / d3;
      (*out)(2) = -3.0 * (2.0 * t * lt - t * t + 1.0) / d3;
      return true;
    }
    if ((k == 0 || k == 2) && near(p, 0.5)) {
      out->resize(3);
      (*out)(0) = 3.0 * std::sqrt(t) * (2.0 * t * t * lt - 3.0 * t * t + 4.0 * t - 1.0) /
                  (2.0 * d3);
      (*out)(1) = -3.0 * std::sqrt(t) * (2.0 * t * lt - t * t + 1.0) / d3;
      (*out)(2) = 3.0 * std::sqrt(t) * (2.0 * lt + t * t - 4.0 * t + 3.0) / (2.0 * d3);
      return true;
    }
    if (k == 1 && near(p, 0.5)) {
      out->resize(3);
      (*out)(0) = 6.0 * std::pow(t, 1.5) * (t * lt + lt - 2.0 * t + 2.0) / d3;
      (*out)(1) = -3.0 * std::sqrt(t) *
                  (t * t * lt + 6.0 * t * lt + lt - 4.0 * t * t + 4.0) / d3;
      (*out)(2) = 6.0 * std::sqrt(t) * (t * lt + lt - 2.0 * t + 2.0) / d3;
      return true;
    }
  }
  return false;
}

/// Rational closed forms; false when p is within 1e-9 of a pole.
bool generic_display(int ell, int k, const cplx& p, double t, VectorXcd* out) {
  if (ell == 0) {
    if (near(p, 0.5)) return false;
    out->resize(1);
    (*out)(0) = (std::pow(cplx(t), p) - std::pow(cplx(t), 1.0 - p)) /
                ((2.0 * p - 1.0) * (t - 1.0));
    return true;
  }
  if (ell == 1) {
    const cplx q = k == 0 ? p : 1.0 - p;  // k = 1 swaps p and 1-p
    if (near(q, 0.5) || near(q, 1.0)) return false;
    const cplx den = (q - 1.0) * (2.0 * q - 1.0) * (t - 1.0) * (t - 1.0);
    out->resize(2);
    (*out)(0) = (std::pow(cplx(t), 2.0 - q) +
                 std::pow(cplx(t), q) * (2.0 * (q - 1.0) * t - 2.0 * q + 1.0)) /
                den;
    (*out)(1) = (std::pow(cplx(t), q) -
                 std::pow(cplx(t), 1.0 - q) * ((2.0 * q - 1.0) * t - 2.0 * q + 2.0)) /
                den;
    return true;
  }
  if (ell == 2) {
    const double tt = t;
    cplx P[3], Q[3], D;
    if (k == 0) {
      if (near(p, 0.5) || near(p, 1.0) || near(p, 1.5)) return false;
      D = (p - 1.0) * (2.0 * p - 3.0) * (2.0 * p - 1.0);
      P[0] = 3.0 * (2.0 * p * p * tt * tt - 5.0 * p * tt * tt + 3.0 * tt * tt -
                    4.0 * p * p * tt + 8.0 * p * tt - 3.0 * tt + 2.0 * p * p -
                    3.0 * p + 1.0) / D;
      P[1] = 3.0 * (2.0 * p * tt - 3.0 * tt - 2.0 * p + 1.0) / D;
      P[2] = 3.0 / D;
      Q[0] = -3.0 * tt * tt / D;
      Q[1] = 3.0 * tt * (2.0 * p * tt - tt - 2.0 * p + 3.0) / D;
      Q[2] = -3.0 * (2.0 * p * p * tt * tt - 3.0 * p * tt * tt + tt * tt -
                     4.0 * p * p * tt + 8.0 * p * tt - 3.0 * tt + 2.0 * p * p -
                     5.0 * p + 3.0) / D;
    } else if (k == 1) {
      if (near(p, 0.0) || near(p, 0.5) || near(p, 1.0)) return false;
      D = (p - 1.0) * p * (2.0 * p - 1.0);
      P[0] = 3.0 * tt * (p * tt - tt - p) / D;
      P[1] = 3.0 * (p * p * tt * tt - 2.0 * p * tt * tt + tt * tt -
                    2.0 * p * p * tt + 2.0 * p * tt + tt + p * p) / D;
      P[2] = 3.0 * (p * tt - tt - p) / D;
      Q[0] = 3.0 * tt * (p * tt - p + 1.0) / D;
      Q[1] = -3.0 * (p * p * tt * tt - 2.0 * p * p * tt + 2.0 * p * tt + tt +
                     p * p - 2.0 * p + 1.0) / D;
      Q[2] = 3.0 * (p * tt - p + 1.0) / D;
    } else {
      if (near(p, -0.5) || near(p, 0.0) || near(p, 0.5)) return false;
      D = p * (2.0 * p - 1.0) * (2.0 * p + 1.0);
      P[0] = 3.0 * tt * tt / D;
      P[1] = 3.0 * tt * (2.0 * p * tt - tt - 2.0 * p - 1.0) / D;
      P[2] = 3.0 * (2.0 * p * p * tt * tt - p * tt * tt - 4.0 * p * p * tt + tt +
                    2.0 * p * p + p) / D;
      // The t-coefficient is 1 - 4p^2, forced by the p -> 1-p mirror of
      // the k = 0 family.
      Q[0] = -3.0 * (2.0 * p * p * tt * tt + p * tt * tt - 4.0 * p * p * tt + tt +
                     2.0 * p * p - p) / D;
      Q[1] = 3.0 * (2.0 * p * tt + tt - 2.0 * p + 1.0) / D;
      Q[2] = -3.0 / D;
    }
    const cplx tp = std::pow(cplx(t), p), t1p = std::pow(cplx(t), 1.0 - p);
    const double c3 = (t - 1.0) * (t - 1.0) * (t - 1.0);
    out->resize(3);
    for (int i = 0; i < 3; ++i) (*out)(i) = (tp * P[i] + t1p * Q[i]) / c3;
    return true;
  }
  return false;
}

}  // namespace

Eigen::VectorXcd closed_form_oracle(int ell, int k, const cplx& p, double t) {
  if (ell < 0 || ell > 2) throw Error("closed_form_oracle: closed forms cover ell <= 2 only");
  if (k < 0 || k > ell) throw Error("closed_form_oracle: k out of range");
  VectorXcd out;
  const auto labels = spherical::equivalents(ell, p, k);
  for (const auto& lab : labels) {
    if (std::abs(lab.first.imag()) < 1e-9 &&
        exceptional_display(ell, lab.second, lab.first, t, &out))
      return out;
  }
  for (const auto& lab : labels) {
    if (generic_display(ell, lab.second, lab.first, t, &out)) return out;
  }
  throw PrintedPole("closed_form_oracle: p lies in every pole set for this family");
}

}  // namespace verify
}  // namespace mvsf
