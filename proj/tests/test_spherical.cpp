#include <doctest.h>

#include <cmath>
#include <random>

#include "mvsf/spherical.hpp"

using namespace mvsf;
using namespace mvsf::spherical;

namespace {

cplx ell0_closed(const cplx& p, double t) {
  return (std::pow(cplx(t), p) - std::pow(cplx(t), 1.0 - p)) /
         ((2.0 * p - 1.0) * (t - 1.0));
}

}  // namespace

TEST_CASE("classify") {
  {
    const SpectralParams sp = classify(0, 0, cplx(2.0));
    CHECK(sp.lambda == cplx(8.0));
    CHECK(sp.mu == cplx(0.0));
    CHECK(sp.two_p_class == TwoPClass::IntegerGE1);
    CHECK_FALSE(sp.mirrored);
  }
  {
    const SpectralParams sp = classify(1, 0, cplx(0.5));
    CHECK(std::abs(sp.lambda - cplx(-1.0)) < 1e-15);
    CHECK(std::abs(sp.mu - cplx(-2.0)) < 1e-15);
    CHECK(sp.two_p_class == TwoPClass::IntegerGE1);
  }
  {
    const SpectralParams sp = classify(2, 0, cplx(0.3));
    CHECK(sp.mirrored);
    CHECK(std::abs(sp.p - cplx(0.7)) < 1e-15);
    CHECK(sp.k == 2);
    CHECK(sp.two_p_class == TwoPClass::Generic);
    // mu is mirror invariant: mu_0(0.3) = -2.4.
    CHECK(std::abs(sp.mu - cplx(-2.4)) < 1e-12);
  }
  {
    const SpectralParams sp = classify(3, 1, cplx(0.5, 0.8));
    CHECK(sp.two_p_class == TwoPClass::HalfLine);
    CHECK_FALSE(sp.mirrored);
  }
  {
    const SpectralParams sp = classify(2, 0, cplx(1.0 + 4e-6));
    CHECK(sp.two_p_class == TwoPClass::Generic);
    CHECK(sp.near_integer_warning);
  }
  CHECK_THROWS_AS(classify(2, 5, cplx(1.0)), Error);
}

TEST_CASE("build_family basics") {
  {
    const FamilyDescriptor fam = build_family(0, 0, cplx(1.7, 0.3));
    CHECK(fam.a.size() == 1);
    CHECK(std::abs(fam.a(0) - cplx(1.0)) < 1e-14);
  }
  {
    // U alpha must be the eigenvector of L(1-p) with eigenvalue mu_k(p).
    const cplx p(1.9, -0.55);
    for (int k = 0; k <= 3; ++k) {
      const FamilyDescriptor fam = build_family(3, k, p);
      const Eigen::VectorXcd w = fam.hahn.U.cast<cplx>() * fam.alpha;
      const Eigen::MatrixXcd L1p = repmat::l_matrix(3, 1.0 - p);
      const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
      CHECK((L1p * w - fam.params.mu * w).cwiseAbs().maxCoeff() <= 1e-9 * scale);
      CHECK_FALSE(fam.degenerate_a0);
      CHECK(std::abs(fam.a(0) - cplx(1.0)) < 1e-14);
    }
  }
  {
    // The mirrored label builds the identical descriptor.
    const cplx p(1.32, 0.77);
    const FamilyDescriptor f1 = build_family(4, 1, p);
    const FamilyDescriptor f2 = build_family(4, 3, 1.0 - p);
    CHECK(f2.params.mirrored);
    CHECK((f1.a - f2.a).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(std::abs(f1.params.mu - f2.params.mu) < 1e-12);
  }
}

TEST_CASE("omega eigenvalue dictionary") {
  const FamilyDescriptor fam = build_family(3, 1, cplx(1.25, 0.4));
  const double l_l2 = 3.0 * 5.0;
  CHECK(std::abs(fam.omega_bar_eig - fam.params.lambda / 4.0) < 1e-14);
  CHECK(std::abs(fam.omega_eig - fam.omega_bar_eig - fam.params.mu - l_l2) < 1e-13);
}

TEST_CASE("eval against the ell=0 closed form") {
  {
    const FamilyDescriptor fam = build_family(0, 0, cplx(2.0));
    CHECK(std::abs(eval_check(fam, 0.25)(0) - cplx(1.75)) < 1e-12);
  }
  {
    const FamilyDescriptor fam = build_family(0, 0, cplx(0.5));
    const double want = std::sqrt(0.25) * std::log(0.25) / (0.25 - 1.0);
    CHECK(std::abs(eval_check(fam, 0.25)(0) - cplx(want)) < 1e-12);
    CHECK(want == doctest::Approx(0.9241962).epsilon(1e-6));
  }
  for (const cplx p : {cplx(1.4, 0.0), cplx(0.8, -1.1), cplx(2.3, 0.6)}) {
    const FamilyDescriptor fam = build_family(0, 0, p);
    for (double t : {0.05, 0.3, 0.7, 0.95}) {
      CHECK(std::abs(eval_check(fam, t)(0) - ell0_closed(p, t)) < 1e-11);
    }
  }
}

TEST_CASE("eval_H against reference values") {
  {
    const FamilyDescriptor fam = build_family(1, 0, cplx(2.0));
    const VectorSample s = eval_H(fam, 0.5);
    CHECK(std::abs(s.H(0) - cplx(2.0 / 3.0)) < 1e-12);
    CHECK((fam.hahn.U.cast<cplx>() * s.check_H - s.H).cwiseAbs().maxCoeff() < 1e-13);
  }
  {
    // ell=2, k=1, p=0 goes through the mirror to the integer branch.
    const FamilyDescriptor fam = build_family(2, 1, cplx(0.0));
    const double t = 0.5, lt = std::log(t);
    const double d3 = (t - 1.0) * (t - 1.0) * (t - 1.0);
    const VectorSample s = eval_H(fam, t);
    CHECK(std::abs(s.H(0) - cplx(-3.0 * t * (2.0 * t * lt - t * t + 1.0) / d3)) < 1e-11);
    CHECK(std::abs(s.H(1) - cplx(6.0 * t * (t * lt + lt - 2.0 * t + 2.0) / d3)) < 1e-11);
    CHECK(std::abs(s.H(2) - cplx(-3.0 * (2.0 * t * lt - t * t + 1.0) / d3)) < 1e-11);
  }
}

TEST_CASE("boundary behavior at t -> 1") {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int ell = 0; ell <= 5; ++ell) {
    cplx p(U(rng), U(rng));
    while (std::abs(2.0 * p - std::round(2.0 * p.real())) < 0.05) p = cplx(U(rng), U(rng));
    for (int k = 0; k <= ell; ++k) {
      const FamilyDescriptor fam = build_family(ell, k, p);
      for (double eps : {1e-4, 1e-6}) {
        const Eigen::VectorXcd H = eval_H(fam, 1.0 - eps).H;
        for (int i = 0; i <= ell; ++i) CHECK(std::abs(H(i) - 1.0) <= 50.0 * eps);
      }
      // check-components vanish at the boundary except the zeroth.
      const Eigen::VectorXcd ch = eval_check(fam, 1.0 - 1e-8);
      CHECK(std::abs(ch(0) - 1.0) <= 1e-6);
      for (int i = 1; i <= ell; ++i) CHECK(std::abs(ch(i)) <= 1e-6);
    }
  }
}

TEST_CASE("eval domain guard") {
  const FamilyDescriptor fam = build_family(1, 0, cplx(1.3));
  CHECK_THROWS_AS(eval_check(fam, 1e-7), Error);
  CHECK_THROWS_AS(eval_check(fam, 1.0 - 1e-10), Error);
  CHECK_NOTHROW(eval_check(fam, 1e-6));
}

TEST_CASE("analytic jet against finite differences") {
  const FamilyDescriptor fam = build_family(3, 1, cplx(0.85, 0.4));
  const double t = 0.37, h = 1e-5;
  Eigen::VectorXcd H, H1, H2;
  eval_H_jet(fam, t, &H, &H1, &H2);
  const Eigen::VectorXcd Hp = eval_H(fam, t + h).H;
  const Eigen::VectorXcd Hm = eval_H(fam, t - h).H;
  CHECK((H - eval_H(fam, t).H).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(((Hp - Hm) / (2.0 * h) - H1).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(((Hp - 2.0 * H + Hm) / (h * h) - H2).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("pq decomposition") {
  {
    // ell = 0: P is constant and Q = -P.
    const cplx p(1.45, -0.2);
    const FamilyDescriptor fam = build_family(0, 0, p);
    const PQDecomposition pq = pq_decomposition(fam);
    CHECK(std::abs(pq.P(0, 0) + pq.Q(0, 0)) < 1e-13);
  }
  for (int ell = 1; ell <= 6; ++ell) {
    const cplx p(1.27, 0.35);
    for (int k = 0; k <= ell; ++k) {
      const FamilyDescriptor fam = build_family(ell, k, p);
      const PQDecomposition pq = pq_decomposition(fam);
      // P(0) and Q(0) are eigenvectors of L(p) and L(1-p) with eigenvalue mu.
      const Eigen::VectorXcd P0 = pq.P.col(0), Q0 = pq.Q.col(0);
      const Eigen::MatrixXcd Lp = repmat::l_matrix(ell, p);
      const Eigen::MatrixXcd L1p = repmat::l_matrix(ell, 1.0 - p);
      const cplx mu = fam.params.mu;
      CHECK((Lp * P0 - mu * P0).cwiseAbs().maxCoeff() <=
            1e-9 * std::max(1.0, P0.cwiseAbs().maxCoeff()));
      CHECK((L1p * Q0 - mu * Q0).cwiseAbs().maxCoeff() <=
            1e-9 * std::max(1.0, Q0.cwiseAbs().maxCoeff()));
      // Reconstruction against eval_H on a grid. Larger t amplifies the
      // (1-t)^{-(l+1)} cancellation, so the grid stays below one half.
      for (double t : {0.15, 0.3, 0.45}) {
        Eigen::VectorXcd rec(ell + 1);
        const cplx tp = std::pow(cplx(t), p), t1p = std::pow(cplx(t), 1.0 - p);
        for (int i = 0; i <= ell; ++i) {
          cplx pv = 0.0, qv = 0.0, tn = 1.0;
          for (int d = 0; d <= ell; ++d) {
            pv += pq.P(i, d) * tn;
            qv += pq.Q(i, d) * tn;
            tn *= t;
          }
          rec(i) = (tp * pv + t1p * qv) / std::pow(1.0 - t, ell + 1.0);
        }
        const Eigen::VectorXcd ref = eval_H(fam, t).H;
        CHECK((rec - ref).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + ref.cwiseAbs().maxCoeff()));
      }
    }
  }
  CHECK_THROWS_AS(pq_decomposition(build_family(2, 0, cplx(1.0))), IntegerTwoP);
}

TEST_CASE("pq matches the tabulated ell=2 polynomials") {
  const cplx p(1.9, 0.3);
  const FamilyDescriptor fam = build_family(2, 0, p);
  const PQDecomposition pq = pq_decomposition(fam);
  // The tabulated form divides by (t-1)^3 where this decomposition divides
  // by (1-t)^3, so the reference coefficients carry the opposite sign.
  const cplx D = -(p - 1.0) * (2.0 * p - 3.0) * (2.0 * p - 1.0);
  const cplx c0 = 3.0 * (2.0 * p * p - 3.0 * p + 1.0) / D;
  const cplx c1 = 3.0 * (-4.0 * p * p + 8.0 * p - 3.0) / D;
  const cplx c2 = 3.0 * (2.0 * p * p - 5.0 * p + 3.0) / D;
  CHECK(std::abs(pq.P(0, 0) - c0) < 1e-11);
  CHECK(std::abs(pq.P(0, 1) - c1) < 1e-11);
  CHECK(std::abs(pq.P(0, 2) - c2) < 1e-11);
  CHECK(std::abs(pq.P(2, 0) - 3.0 / D) < 1e-12);
  CHECK(std::abs(pq.P(2, 1)) < 1e-12);
  CHECK(std::abs(pq.P(2, 2)) < 1e-12);
}

TEST_CASE("equivalents") {
  {
    const auto e = equivalents(2, cplx(0.3, 0.1), 1);
    REQUIRE(e.size() == 2);
    CHECK(e[0].second == 1);
    CHECK(std::abs(e[0].first - cplx(0.3, 0.1)) < 1e-15);
    CHECK(e[1].second == 1);
    CHECK(std::abs(e[1].first - cplx(0.7, -0.1)) < 1e-15);
  }
  {
    const auto e = equivalents(2, cplx(1.0), 0);
    bool has_shift = false;
    for (const auto& x : e)
      if (x.second == 1 && std::abs(x.first - cplx(1.0)) < 1e-12) has_shift = true;
    CHECK(has_shift);
  }
  {
    const auto e = equivalents(3, cplx(0.8, -0.6), 2);
    bool has_self = false;
    for (const auto& x : e)
      if (x.second == 2 && std::abs(x.first - cplx(0.8, -0.6)) < 1e-15) has_self = true;
    CHECK(has_self);
  }
}

TEST_CASE("unitarizability and parameter maps") {
  CHECK(is_unitarizable(1, cplx(0.75, 5.0), 0));
  CHECK(is_unitarizable(2, cplx(0.3), 1));
  CHECK_FALSE(is_unitarizable(2, cplx(0.3), 0));

  CHECK(adjoint_params(0, cplx(0.5), 0) == std::pair<cplx, int>(cplx(0.5), 0));
  CHECK(std::abs(adjoint_params(1, cplx(0.75, 5.0), 0).first - cplx(0.75, 5.0)) < 1e-15);
  CHECK(adjoint_params(2, cplx(1.0), 0).first == cplx(1.0));
  CHECK(adjoint_params(2, cplx(1.0), 0).second == 0);

  CHECK(principal_series_params(0, cplx(0.5), 0).first == cplx(0.0));
  CHECK(principal_series_params(0, cplx(0.5), 0).second == 0);
  {
    const auto vr = principal_series_params(2, cplx(0.5, 0.9), 1);
    CHECK(std::abs(vr.first - cplx(3.6)) < 1e-14);
    CHECK(vr.second == 0);
  }
  {
    const auto vr1 = principal_series_params(3, cplx(0.8, 0.1), 2);
    const auto vr2 = principal_series_params(3, cplx(0.2, -0.1), 1);
    CHECK(std::abs(vr1.first + vr2.first) < 1e-14);
    CHECK(vr1.second == -vr2.second);
  }
}

TEST_CASE("pointwise family symmetries") {
  const cplx p(1.22, 0.6);
  const int ell = 3;
  for (int k = 0; k <= ell; ++k) {
    const FamilyDescriptor f1 = build_family(ell, k, p);
    const FamilyDescriptor f2 = build_family(ell, ell - k, 1.0 - p);
    for (double t : {0.1, 0.45, 0.9}) {
      CHECK((eval_H(f1, t).H - eval_H(f2, t).H).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  // Shift equivalence at integer 2p: (p, k) and (p, l+1-k-2p).
  {
    const FamilyDescriptor f1 = build_family(2, 0, cplx(1.0));
    const FamilyDescriptor f2 = build_family(2, 1, cplx(1.0));
    for (double t : {0.2, 0.55, 0.85}) {
      CHECK((eval_H(f1, t).H - eval_H(f2, t).H).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("adjoint relation and unitarizable symmetry") {
  const int ell = 2;
  // Generic family and its adjoint: k_i(t) = t^{(l-2i)/2} conj(h_{l-i}(t)).
  for (const cplx p : {cplx(1.35, 0.0), cplx(0.8, 0.45)}) {
    for (int k = 0; k <= ell; ++k) {
      const FamilyDescriptor H = build_family(ell, k, p);
      const auto ad = adjoint_params(ell, p, k);
      const FamilyDescriptor K = build_family(ell, ad.second, ad.first);
      for (double t : {0.2, 0.5, 0.8}) {
        const Eigen::VectorXcd h = eval_H(H, t).H;
        const Eigen::VectorXcd kk = eval_H(K, t).H;
        for (int i = 0; i <= ell; ++i) {
          const cplx want = std::pow(t, (ell - 2.0 * i) / 2.0) * std::conj(h(ell - i));
          CHECK(std::abs(kk(i) - want) <= 1e-9);
        }
      }
    }
  }
  // A unitarizable family satisfies the same identity with itself.
  {
    const FamilyDescriptor H = build_family(2, 1, cplx(0.3));
    REQUIRE(H.unitarizable);
    for (double t : {0.3, 0.7}) {
      const Eigen::VectorXcd h = eval_H(H, t).H;
      for (int i = 0; i <= ell; ++i) {
        const cplx want = std::pow(t, (ell - 2.0 * i) / 2.0) * std::conj(h(ell - i));
        CHECK(std::abs(h(i) - want) <= 1e-9);
      }
    }
  }
}

TEST_CASE("phi matrix") {
  CHECK(std::abs(phi_matrix(0, cplx(2.0), 0.25)(0, 0) - cplx(1.75)) < 1e-12);
  {
    const Eigen::MatrixXcd phi = phi_matrix(1, cplx(2.0), 0.5);
    CHECK(std::abs(phi(0, 0) - cplx(2.0 / 3.0)) < 1e-12);
  }
  {
    const Eigen::MatrixXcd phi = phi_matrix(3, cplx(1.6, 0.7), 1.0 - 1e-8);
    CHECK((phi - Eigen::MatrixXcd::Ones(4, 4)).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("richardson limit agrees with the direct integer-branch value") {
  for (int k = 0; k <= 2; ++k) {
    const FamilyDescriptor fam = build_family(2, k, cplx(1.0));
    for (double t : {0.3, 0.6}) {
      const Eigen::VectorXcd direct = eval_H(fam, t).H;
      const Eigen::VectorXcd lim = eval_H_richardson(2, k, cplx(1.0), t);
      CHECK((direct - lim).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
  // And at the half-integer log point.
  for (int k = 0; k <= 1; ++k) {
    const FamilyDescriptor fam = build_family(1, k, cplx(0.5));
    const Eigen::VectorXcd direct = eval_H(fam, 0.4).H;
    const Eigen::VectorXcd lim = eval_H_richardson(1, k, cplx(0.5), 0.4);
    CHECK((direct - lim).cwiseAbs().maxCoeff() <= 1e-8);
  }
}
