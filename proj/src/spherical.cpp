#include "mvsf/spherical.hpp"

#include <cmath>
#include <sstream>

namespace mvsf {
namespace spherical {

using specfun::gauss2f1_near1;
using specfun::pochhammer;

namespace {

constexpr double kIntTol = 1e-9;
constexpr double kWarnTol = 1e-5;
constexpr double kTMin = 1e-6;
constexpr double kTMax = 1.0 - 1e-9;

void check_t(double t) {
  if (!(t >= kTMin && t <= kTMax)) {
    std::ostringstream os;
    os << "evaluation restricted to t in [1e-6, 1-1e-9], got t=" << t;
    throw Error(os.str());
  }
}

/// Series parameters of one decoupled component: check-h_i =
/// a_i t^s (1-t)^i 2F1(A, B; C; 1-t).
struct ComponentForm {
  cplx s, A, B, C;
};

ComponentForm component_form(const FamilyDescriptor& fam, int i) {
  const cplx p = fam.params.p;
  ComponentForm f;
  f.A = cplx(i + 1.0);
  f.C = cplx(2.0 * i + 2.0);
  bool low = true;
  if (fam.branch == Branch::IntegerMixed) {
    const long long n2p = std::llround(2.0 * p.real());
    low = i <= n2p - 2;
  }
  if (low) {
    f.s = 1.0 - p;
    f.B = cplx(i + 2.0) - 2.0 * p;
  } else {
    f.s = p;
    f.B = 2.0 * p + cplx(static_cast<double>(i));
  }
  return f;
}

double int_distance(const cplx& two_p) {
  const double m = std::round(two_p.real());
  return std::abs(two_p - cplx(m));
}

/// a_i <-> alpha_i ratio: the eta-limit of the i-th decoupled component.
/// For 2p = 1 the limit is log-scaled and carries -G(i+1)^2/G(2i+2) instead.
cplx alpha_to_a(const cplx& p, bool log_case, int i) {
  if (log_case) {
    const double num = std::tgamma(i + 1.0) * std::tgamma(i + 1.0);
    return cplx(-num / std::tgamma(2.0 * i + 2.0));
  }
  return pochhammer(2.0 * p - 1.0, i + 1) / pochhammer(cplx(i + 1.0), i + 1);
}

}  // namespace

SpectralParams classify(int ell, int k, const cplx& p) {
  if (ell < 0) throw Error("classify: ell must be nonnegative");
  if (k < 0 || k > ell) throw Error("classify: k out of range");
  SpectralParams sp;
  sp.ell = ell;
  cplx pp = p;
  int kk = k;
  cplx two_p = 2.0 * pp;
  double d = int_distance(two_p);
  if (d < kIntTol) {
    // Snap to the exact integer point; the family there is the p-limit.
    long long m = std::llround(two_p.real());
    if (m < 1) {
      pp = 1.0 - cplx(0.5 * m);
      kk = ell - k;
      sp.mirrored = true;
    } else {
      pp = cplx(0.5 * m);
    }
    sp.two_p_class = TwoPClass::IntegerGE1;
  } else if (std::abs(two_p.real() - 1.0) < kIntTol) {
    sp.two_p_class = TwoPClass::HalfLine;
  } else {
    if (two_p.real() < 1.0) {
      pp = 1.0 - pp;
      kk = ell - k;
      sp.mirrored = true;
    }
    sp.two_p_class = TwoPClass::Generic;
  }
  sp.near_integer_warning = !(d < kIntTol) && int_distance(2.0 * pp) < kWarnTol;
  sp.k = kk;
  sp.p = pp;
  sp.lambda = 4.0 * pp * (pp - 1.0);
  sp.mu = repmat::mu_value(ell, pp, kk);
  return sp;
}

FamilyDescriptor build_family(int ell, int k, const cplx& p) {
  FamilyDescriptor fam;
  fam.params = classify(ell, k, p);
  const cplx pn = fam.params.p;
  fam.hahn = repmat::hahn_transform(ell);
  fam.branch = fam.params.two_p_class == TwoPClass::IntegerGE1
                   ? Branch::IntegerMixed
                   : Branch::GenericHyper;

  // U alpha must be the eigenvector of L(1-p) whose eigenvalue is mu_k(p).
  Eigen::VectorXcd w = repmat::l_eigenvector_for_mu(ell, 1.0 - pn, fam.params.mu);
  Eigen::MatrixXcd Uc = fam.hahn.U.cast<cplx>();
  Eigen::VectorXcd alpha = Uc.partialPivLu().solve(w);

  const bool log_case = fam.branch == Branch::IntegerMixed &&
                        std::llround(2.0 * pn.real()) == 1;
  Eigen::VectorXcd a(ell + 1);
  for (int i = 0; i <= ell; ++i) a(i) = alpha(i) * alpha_to_a(pn, log_case, i);

  const double amax = a.cwiseAbs().maxCoeff();
  if (std::abs(a(0)) < 1e-12 * std::max(amax, 1.0)) {
    fam.degenerate_a0 = true;  // reported, never repaired
  } else {
    const cplx scale = a(0);
    a /= scale;
    alpha /= scale;
  }
  fam.alpha = alpha;
  fam.a = a;

  fam.omega_eig = fam.params.lambda / 4.0 + fam.params.mu +
                  cplx(static_cast<double>(ell) * (ell + 2.0));
  fam.omega_bar_eig = fam.params.lambda / 4.0;
  auto vr = principal_series_params(ell, fam.params.p, fam.params.k);
  fam.v = vr.first;
  fam.r = vr.second;
  fam.unitarizable = is_unitarizable(ell, fam.params.p, fam.params.k);
  return fam;
}

Eigen::VectorXcd eval_check(const FamilyDescriptor& fam, double t) {
  return eval_check(fam, t, nullptr);
}

Eigen::VectorXcd eval_check(const FamilyDescriptor& fam, double t,
                            EvalDiagnostics* diag) {
  check_t(t);
  const int ell = fam.params.ell;
  const double z = 1.0 - t;
  Eigen::VectorXcd out(ell + 1);
  if (diag && fam.params.near_integer_warning) {
    diag->warnings.push_back(
        "2p is within 1e-5 of an integer: coefficients are ill-conditioned");
  }
  for (int i = 0; i <= ell; ++i) {
    const ComponentForm cf = component_form(fam, i);
    HyperSeriesResult hs = gauss2f1_near1(cf.A, cf.B, cf.C, z);
    out(i) = fam.a(i) * std::pow(cplx(t), cf.s) *
             std::pow(cplx(1.0 - t), static_cast<double>(i)) * hs.value;
    if (diag) diag->series.push_back(hs);
  }
  return out;
}

void eval_check_jet(const FamilyDescriptor& fam, double t, Eigen::VectorXcd* f,
                    Eigen::VectorXcd* f1, Eigen::VectorXcd* f2) {
  check_t(t);
  const int ell = fam.params.ell;
  const double z = 1.0 - t;
  f->resize(ell + 1);
  f1->resize(ell + 1);
  f2->resize(ell + 1);
  for (int i = 0; i <= ell; ++i) {
    const ComponentForm cf = component_form(fam, i);
    const cplx F = gauss2f1_near1(cf.A, cf.B, cf.C, z).value;
    const cplx dcoef = cf.A * cf.B / cf.C;
    const cplx Fz = dcoef * gauss2f1_near1(cf.A + 1.0, cf.B + 1.0, cf.C + 1.0, z).value;
    const cplx Fzz = dcoef * (cf.A + 1.0) * (cf.B + 1.0) / (cf.C + 1.0) *
                     gauss2f1_near1(cf.A + 2.0, cf.B + 2.0, cf.C + 2.0, z).value;
    // w(t) = F(1-t): w' = -Fz, w'' = +Fzz.
    const cplx u = std::pow(cplx(t), cf.s);
    const cplx up = cf.s * std::pow(cplx(t), cf.s - 1.0);
    const cplx upp = cf.s * (cf.s - 1.0) * std::pow(cplx(t), cf.s - 2.0);
    const double v = std::pow(1.0 - t, i);
    const double vp = i == 0 ? 0.0 : -i * std::pow(1.0 - t, i - 1);
    const double vpp = i < 2 ? 0.0 : i * (i - 1.0) * std::pow(1.0 - t, i - 2);
    const cplx w = F, wp = -Fz, wpp = Fzz;
    (*f)(i) = fam.a(i) * u * v * w;
    (*f1)(i) = fam.a(i) * (up * v * w + u * vp * w + u * v * wp);
    (*f2)(i) = fam.a(i) * (upp * v * w + u * vpp * w + u * v * wpp +
                           2.0 * (up * vp * w + up * v * wp + u * vp * wp));
  }
}

VectorSample eval_H(const FamilyDescriptor& fam, double t) {
  VectorSample s;
  s.t = t;
  s.check_H = eval_check(fam, t, &s.diagnostics);
  s.H = fam.hahn.U.cast<cplx>() * s.check_H;
  return s;
}

void eval_H_jet(const FamilyDescriptor& fam, double t, Eigen::VectorXcd* H,
                Eigen::VectorXcd* H1, Eigen::VectorXcd* H2) {
  Eigen::VectorXcd f, f1, f2;
  eval_check_jet(fam, t, &f, &f1, &f2);
  const Eigen::MatrixXcd U = fam.hahn.U.cast<cplx>();
  *H = U * f;
  *H1 = U * f1;
  *H2 = U * f2;
}

PQDecomposition pq_decomposition(const FamilyDescriptor& fam) {
  if (fam.branch != Branch::GenericHyper) {
    throw IntegerTwoP("pq_decomposition: not available for integer 2p");
  }
  const int ell = fam.params.ell;
  const cplx p = fam.params.p;
  const int n = ell + 1;
  Eigen::MatrixXcd Pc = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd Qc = Eigen::MatrixXcd::Zero(n, n);

  // check-P_i = alpha_i (1-t)^{l-i} 2F1(-i, 2p-i-1; 2p; t), terminating;
  // check-Q_i mirrors p -> 1-p with the beta scale.
  auto fill = [&](Eigen::MatrixXcd& M, const cplx& scale_den_base, bool q_side) {
    for (int i = 0; i <= ell; ++i) {
      const cplx scale = fam.a(i) * pochhammer(cplx(i + 1.0), i + 1) /
                         pochhammer(scale_den_base, i + 1);
      // Coefficients of the terminating 2F1 in t.
      std::vector<cplx> fc(i + 1);
      fc[0] = 1.0;
      const cplx A = cplx(static_cast<double>(-i));
      const cplx B = q_side ? 1.0 - 2.0 * p - cplx(static_cast<double>(i))
                            : 2.0 * p - cplx(i + 1.0);
      const cplx C = q_side ? 2.0 - 2.0 * p : 2.0 * p;
      for (int m = 0; m < i; ++m) {
        fc[m + 1] = fc[m] * (A + static_cast<double>(m)) * (B + static_cast<double>(m)) /
                    ((C + static_cast<double>(m)) * (m + 1.0));
      }
      // Multiply by (1-t)^{l-i}.
      std::vector<double> binpow(ell - i + 1);
      double bc = 1.0;
      for (int m = 0; m <= ell - i; ++m) {
        binpow[m] = (m % 2 ? -bc : bc);
        bc = bc * (ell - i - m) / (m + 1.0);
      }
      for (int m1 = 0; m1 <= i; ++m1)
        for (int m2 = 0; m2 <= ell - i; ++m2)
          M(i, m1 + m2) += scale * fc[m1] * binpow[m2];
    }
  };
  fill(Pc, 1.0 - 2.0 * p, false);
  fill(Qc, 2.0 * p - 1.0, true);

  PQDecomposition pq;
  const Eigen::MatrixXcd U = fam.hahn.U.cast<cplx>();
  pq.P = U * Pc;
  pq.Q = U * Qc;
  return pq;
}

std::vector<std::pair<cplx, int>> equivalents(int ell, const cplx& p, int k) {
  std::vector<std::pair<cplx, int>> out;
  auto push = [&](const cplx& pp, int kk) {
    for (const auto& e : out)
      if (std::abs(e.first - pp) < 1e-9 && e.second == kk) return;
    out.emplace_back(pp, kk);
  };
  push(p, k);
  push(1.0 - p, ell - k);
  // Shifted labels exist when the shifted index is a real integer in range.
  auto as_index = [&](const cplx& idx, int* out_idx) {
    if (std::abs(idx.imag()) > 1e-9) return false;
    const double r = std::round(idx.real());
    if (std::abs(idx.real() - r) > 1e-9) return false;
    if (r < 0 || r > ell) return false;
    *out_idx = static_cast<int>(r);
    return true;
  };
  int idx = 0;
  if (as_index(cplx(ell + 1.0) - cplx(static_cast<double>(k)) - 2.0 * p, &idx))
    push(p, idx);
  if (as_index(cplx(static_cast<double>(k - 1)) + 2.0 * p, &idx))
    push(1.0 - p, idx);
  return out;
}

bool is_unitarizable(int ell, const cplx& p, int k) {
  if (ell != 2 * k) {
    return std::abs(p.real() - ((ell - 2.0 * k) / 4.0 + 0.5)) < 1e-9;
  }
  return std::abs(p.real() - 0.5) < 1e-9 || std::abs(p.imag()) < 1e-9;
}

std::pair<cplx, int> adjoint_params(int ell, const cplx& p, int k) {
  return {cplx((ell - 2.0 * k) / 2.0 + 1.0) - std::conj(p), k};
}

std::pair<cplx, int> principal_series_params(int ell, const cplx& p, int k) {
  const cplx v = cplx(0.0, 1.0) * (cplx(ell - 2.0 * k + 2.0) - 4.0 * p);
  return {v, 2 * k - ell};
}

Eigen::MatrixXcd phi_matrix(int ell, const cplx& p, double t) {
  Eigen::MatrixXcd phi(ell + 1, ell + 1);
  for (int k = 0; k <= ell; ++k) {
    const FamilyDescriptor fam = build_family(ell, k, p);
    phi.row(k) = eval_H(fam, t).H.transpose();
  }
  return phi;
}

Eigen::VectorXcd eval_H_richardson(int ell, int k, const cplx& p, double t,
                                   double delta) {
  if (std::abs(p.imag()) > 1e-9) {
    throw Error("eval_H_richardson: exceptional p must be real");
  }
  auto at = [&](double x) {
    return eval_H(build_family(ell, k, cplx(x, 0.0)), t).H;
  };
  const double x = p.real();
  const Eigen::VectorXcd f1 = at(x + delta) + at(x - delta);
  const Eigen::VectorXcd f2 = at(x + 2.0 * delta) + at(x - 2.0 * delta);
  return (4.0 * f1 - f2) / 6.0;
}

}  // namespace spherical
}  // namespace mvsf
