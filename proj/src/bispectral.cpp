#include "mvsf/bispectral.hpp"

#include <cmath>

namespace mvsf {
namespace bispectral {

namespace {

/// All families of one type at one p, built once and evaluated across t.
std::vector<spherical::FamilyDescriptor> family_set(int ell, const cplx& p) {
  std::vector<spherical::FamilyDescriptor> fams;
  fams.reserve(ell + 1);
  for (int k = 0; k <= ell; ++k) fams.push_back(spherical::build_family(ell, k, p));
  return fams;
}

Eigen::MatrixXcd phi_from(const std::vector<spherical::FamilyDescriptor>& fams,
                          double t) {
  const int n = static_cast<int>(fams.size());
  Eigen::MatrixXcd phi(n, n);
  for (int k = 0; k < n; ++k) phi.row(k) = spherical::eval_H(fams[k], t).H.transpose();
  return phi;
}

struct PhiStack {
  std::vector<Eigen::MatrixXcd> minus, center, plus;
};

PhiStack phi_stack(int ell, const cplx& p, const std::vector<double>& grid) {
  const auto fm = family_set(ell, p - 1.0);
  const auto f0 = family_set(ell, p);
  const auto fp = family_set(ell, p + 1.0);
  PhiStack st;
  for (double t : grid) {
    st.minus.push_back(phi_from(fm, t));
    st.center.push_back(phi_from(f0, t));
    st.plus.push_back(phi_from(fp, t));
  }
  return st;
}

double stack_residual(const PhiStack& st, const std::vector<double>& grid,
                      const RecursionTriple& tr) {
  double worst = 0.0;
  for (size_t g = 0; g < grid.size(); ++g) {
    const double t = grid[g];
    const double gt = (t * t + 1.0) / t;
    const Eigen::MatrixXcd R = tr.A * st.minus[g] + tr.B * st.center[g] +
                               tr.C * st.plus[g] - gt * st.center[g];
    const double scale = (gt * st.center[g]).cwiseAbs().maxCoeff() + 1.0;
    worst = std::max(worst, R.cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

/// Column indices of the banded unknowns in row k: A diagonals 0..+2,
/// B diagonals -1..+1, C diagonals -2..0.
struct RowBands {
  std::vector<int> a, b, c;
};

RowBands row_bands(int ell, int k) {
  RowBands rb;
  for (int j = k; j <= std::min(k + 2, ell); ++j) rb.a.push_back(j);
  for (int j = std::max(k - 1, 0); j <= std::min(k + 1, ell); ++j) rb.b.push_back(j);
  for (int j = std::max(k - 2, 0); j <= k; ++j) rb.c.push_back(j);
  return rb;
}

/// Least squares for one row block: normal equations with column scaling and
/// a QR fallback above condition 1e8. Above 1e10 the design is treated as
/// rank deficient (equivalent families make Phi rows coincide at special p)
/// and the minimal-norm solution is taken; consistency is checked by the
/// caller through the fit residual.
Eigen::VectorXcd solve_row(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& rhs,
                           double* condition) {
  const int u = static_cast<int>(M.cols());
  Eigen::VectorXd colnorm(u);
  for (int j = 0; j < u; ++j) colnorm(j) = std::max(M.col(j).norm(), 1e-300);
  Eigen::MatrixXcd Ms = M;
  for (int j = 0; j < u; ++j) Ms.col(j) /= colnorm(j);

  const Eigen::MatrixXcd N = Ms.adjoint() * Ms;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(N);
  const double lmin = std::max(es.eigenvalues().minCoeff(), 0.0);
  const double lmax = es.eigenvalues().maxCoeff();
  const double cond = lmin > 0.0 ? std::sqrt(lmax / lmin) : 1e300;
  *condition = cond;

  Eigen::VectorXcd y;
  if (cond > 1e10) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Ms, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    y = svd.solve(rhs);
  } else if (cond > 1e8) {
    y = Ms.colPivHouseholderQr().solve(rhs);
  } else {
    y = N.ldlt().solve(Ms.adjoint() * rhs);
  }
  return y.cwiseQuotient(colnorm.cast<cplx>());
}

}  // namespace

std::vector<double> chebyshev_grid(int n, double lo, double hi) {
  std::vector<double> g(n);
  for (int j = 0; j < n; ++j) {
    const double x = std::cos((2.0 * j + 1.0) * M_PI / (2.0 * n));
    g[j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
  }
  return g;
}

RecursionTriple fit_recursion(int ell, const cplx& p, const std::vector<double>& t_grid) {
  const int n = ell + 1;
  const int ng = static_cast<int>(t_grid.size());
  if (ng < 3) throw Error("fit_recursion: need at least 3 grid points");
  const PhiStack st = phi_stack(ell, p, t_grid);

  RecursionTriple tr;
  tr.ell = ell;
  tr.p = p;
  tr.A = Eigen::MatrixXcd::Zero(n, n);
  tr.B = Eigen::MatrixXcd::Zero(n, n);
  tr.C = Eigen::MatrixXcd::Zero(n, n);
  tr.condition = 0.0;

  for (int k = 0; k < n; ++k) {
    const RowBands rb = row_bands(ell, k);
    const int u = static_cast<int>(rb.a.size() + rb.b.size() + rb.c.size());
    Eigen::MatrixXcd M(ng * n, u);
    Eigen::VectorXcd rhs(ng * n);
    for (int g = 0; g < ng; ++g) {
      const double t = t_grid[g];
      const double gt = (t * t + 1.0) / t;
      for (int c = 0; c < n; ++c) {
        const int row = g * n + c;
        int col = 0;
        for (int j : rb.a) M(row, col++) = st.minus[g](j, c);
        for (int j : rb.b) M(row, col++) = st.center[g](j, c);
        for (int j : rb.c) M(row, col++) = st.plus[g](j, c);
        rhs(row) = gt * st.center[g](k, c);
      }
    }
    double cond = 0.0;
    const Eigen::VectorXcd x = solve_row(M, rhs, &cond);
    tr.condition = std::max(tr.condition, cond);
    int col = 0;
    for (int j : rb.a) tr.A(k, j) = x(col++);
    for (int j : rb.b) tr.B(k, j) = x(col++);
    for (int j : rb.c) tr.C(k, j) = x(col++);
  }
  tr.fit_residual = stack_residual(st, t_grid, tr);
  if (tr.condition > 1e10 && tr.fit_residual > 1e-6) {
    throw IllConditioned("fit_recursion: rank-deficient design with no consistent solution");
  }
  return tr;
}

double fit_offband_leakage(int ell, const cplx& p, const std::vector<double>& t_grid) {
  const int n = ell + 1;
  const int ng = static_cast<int>(t_grid.size());
  const PhiStack st = phi_stack(ell, p, t_grid);
  double biggest = 0.0, leak = 0.0;
  for (int k = 0; k < n; ++k) {
    // Full row: all 3n unknowns.
    Eigen::MatrixXcd M(ng * n, 3 * n);
    Eigen::VectorXcd rhs(ng * n);
    for (int g = 0; g < ng; ++g) {
      const double t = t_grid[g];
      for (int c = 0; c < n; ++c) {
        const int row = g * n + c;
        for (int j = 0; j < n; ++j) {
          M(row, j) = st.minus[g](j, c);
          M(row, n + j) = st.center[g](j, c);
          M(row, 2 * n + j) = st.plus[g](j, c);
        }
        rhs(row) = (t * t + 1.0) / t * st.center[g](k, c);
      }
    }
    const Eigen::VectorXcd x = M.colPivHouseholderQr().solve(rhs);
    const RowBands rb = row_bands(ell, k);
    for (int j = 0; j < n; ++j) {
      const bool in_a = std::count(rb.a.begin(), rb.a.end(), j) > 0;
      const bool in_b = std::count(rb.b.begin(), rb.b.end(), j) > 0;
      const bool in_c = std::count(rb.c.begin(), rb.c.end(), j) > 0;
      biggest = std::max({biggest, std::abs(x(j)), std::abs(x(n + j)),
                          std::abs(x(2 * n + j))});
      if (!in_a) leak = std::max(leak, std::abs(x(j)));
      if (!in_b) leak = std::max(leak, std::abs(x(n + j)));
      if (!in_c) leak = std::max(leak, std::abs(x(2 * n + j)));
    }
  }
  return leak / std::max(biggest, 1e-300);
}

namespace {

/// Division guarded by the table's pole set.
cplx pole_guarded(const cplx& num, std::initializer_list<cplx> den_factors) {
  cplx den(1.0, 0.0);
  for (const cplx& f : den_factors) {
    if (std::abs(f) < 1e-9) throw PrintedPole("reference_tables: p hits a table denominator");
    den *= f;
  }
  return num / den;
}

}  // namespace

RecursionTriple reference_tables(int ell, const cplx& p) {
  RecursionTriple tr;
  tr.ell = ell;
  tr.p = p;
  const int n = ell + 1;
  tr.A = Eigen::MatrixXcd::Zero(n, n);
  tr.B = Eigen::MatrixXcd::Zero(n, n);
  tr.C = Eigen::MatrixXcd::Zero(n, n);
  const cplx one(1.0, 0.0);
  auto g = pole_guarded;

  if (ell == 0) {
    tr.A(0, 0) = g(2.0 * p - 3.0, {2.0 * p - 1.0});
    tr.B(0, 0) = 0.0;
    tr.C(0, 0) = g(2.0 * p + 1.0, {2.0 * p - 1.0});
    return tr;
  }
  if (ell == 1) {
    tr.A(0, 0) = g(p - 2.0, {p - 1.0});
    tr.A(0, 1) = g(one, {p - 1.0, 2.0 * p - 1.0});
    tr.A(1, 1) = g(2.0 * p - 3.0, {2.0 * p - 1.0});
    tr.B(0, 0) = g(one, {1.0 - p, 2.0 * p - 1.0});
    tr.B(0, 1) = g(one, {p - 1.0, 2.0 * p - 1.0});
    tr.B(1, 0) = g(one, {p, 2.0 * p - 1.0});
    tr.B(1, 1) = g(one, {p, 1.0 - 2.0 * p});
    tr.C(0, 0) = g(2.0 * p + 1.0, {2.0 * p - 1.0});
    tr.C(1, 0) = g(one, {p, 2.0 * p - 1.0});
    tr.C(1, 1) = g(p + 1.0, {p});
    return tr;
  }
  if (ell == 3) {
    tr.A(0, 0) = g(p - 3.0, {p - 2.0});
    tr.A(0, 1) = g(3.0 * one, {p - 1.0, 2.0 * p - 3.0});
    tr.A(0, 2) = g(3.0 * one, {p - 2.0, p - 1.0, 2.0 * p - 3.0, 2.0 * p - 1.0});
    tr.A(1, 1) = g((p - 2.0) * p * (2.0 * p - 5.0), {p - 1.0, p - 1.0, 2.0 * p - 3.0});
    tr.A(1, 2) = g(16.0 * (p - 2.0) * p,
                   {p - 1.0, 2.0 * p - 3.0, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.A(1, 3) = g(3.0 * one, {p - 1.0, p - 1.0, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.A(2, 2) = g((p - 2.0) * (2.0 * p - 3.0) * (2.0 * p + 1.0),
                   {p - 1.0, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.A(2, 3) = g(3.0 * (2.0 * p - 3.0), {p - 1.0, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.A(3, 3) = g(2.0 * p - 3.0, {2.0 * p - 1.0});

    tr.B(0, 0) = g(-3.0 * one, {p - 1.0, 2.0 * p - 3.0});
    tr.B(0, 1) = g(3.0 * one, {p - 1.0, 2.0 * p - 3.0});
    tr.B(1, 0) = g(3.0 * (p - 2.0), {p - 1.0, p - 1.0, 2.0 * p - 3.0});
    tr.B(1, 1) = g(-(14.0 * p * p - 21.0 * p - 9.0),
                   {p - 1.0, p, 2.0 * p - 3.0, 2.0 * p - 1.0});
    tr.B(1, 2) = g((2.0 * p - 3.0) * (2.0 * p + 1.0), {p - 1.0, p - 1.0, p, 2.0 * p - 1.0});
    tr.B(2, 1) = g((2.0 * p - 3.0) * (2.0 * p + 1.0), {p - 1.0, p, p, 2.0 * p - 1.0});
    tr.B(2, 2) = g(-(14.0 * p * p - 7.0 * p - 16.0),
                   {p - 1.0, p, 2.0 * p - 1.0, 2.0 * p + 1.0});
    tr.B(2, 3) = g(3.0 * (p + 1.0), {p, p, 2.0 * p + 1.0});
    tr.B(3, 2) = g(3.0 * one, {p, 2.0 * p + 1.0});
    tr.B(3, 3) = g(-3.0 * one, {p, 2.0 * p + 1.0});

    tr.C(0, 0) = g(2.0 * p + 1.0, {2.0 * p - 1.0});
    tr.C(1, 0) = g(3.0 * (2.0 * p + 1.0), {p, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.C(1, 1) = g((p + 1.0) * (2.0 * p - 3.0) * (2.0 * p + 1.0),
                   {p, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.C(2, 0) = g(3.0 * one, {p, p, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.C(2, 1) = g(16.0 * (p - 1.0) * (p + 1.0),
                   {p, 2.0 * p - 1.0, 2.0 * p - 1.0, 2.0 * p + 1.0});
    tr.C(2, 2) = g((p - 1.0) * (p + 1.0) * (2.0 * p + 3.0), {p, p, 2.0 * p + 1.0});
    tr.C(3, 1) = g(3.0 * one, {p, p + 1.0, 2.0 * p - 1.0, 2.0 * p + 1.0});
    tr.C(3, 2) = g(3.0 * one, {p, 2.0 * p + 1.0});
    tr.C(3, 3) = g(p + 2.0, {p + 1.0});
    return tr;
  }
  if (ell == 4) {
    tr.A(0, 0) = g(2.0 * p - 7.0, {2.0 * p - 5.0});
    tr.A(0, 1) = g(2.0 * one, {p - 2.0, p - 1.0});
    tr.A(0, 2) = g(6.0 * one, {p - 2.0, p - 1.0, 2.0 * p - 5.0, 2.0 * p - 1.0});
    tr.A(1, 1) = g((p - 3.0) * p * (2.0 * p - 5.0), {p - 2.0, p - 1.0, 2.0 * p - 3.0});
    tr.A(1, 2) = g(3.0 * p * (2.0 * p - 5.0), {p - 2.0, p - 1.0, p - 1.0, 2.0 * p - 1.0});
    tr.A(1, 3) = g(9.0 * one, {p - 1.0, p - 1.0, 2.0 * p - 3.0, 2.0 * p - 1.0});
    tr.A(2, 2) = g(p * (p - 2.0) * (2.0 * p - 5.0) * (2.0 * p + 1.0),
                   {p - 1.0, p - 1.0, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.A(2, 3) = g(3.0 * (p - 2.0) * (2.0 * p + 1.0), {p - 1.0, p - 1.0, p, 2.0 * p - 1.0});
    tr.A(2, 4) = g(6.0 * one, {p - 1.0, p, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.A(3, 3) = g((p - 2.0) * (p + 1.0) * (2.0 * p - 3.0), {p - 1.0, p, 2.0 * p - 1.0});
    tr.A(3, 4) = g(2.0 * (2.0 * p - 3.0), {p - 1.0, p, 2.0 * p - 1.0});
    tr.A(4, 4) = g(2.0 * p - 3.0, {2.0 * p - 1.0});

    tr.B(0, 0) = g(-2.0 * one, {p - 2.0, p - 1.0});
    tr.B(0, 1) = g(2.0 * one, {p - 2.0, p - 1.0});
    tr.B(1, 0) = g(2.0 * (2.0 * p - 5.0), {p - 2.0, p - 1.0, 2.0 * p - 3.0});
    tr.B(1, 1) = g(-(5.0 * p * p - 10.0 * p - 4.0), {p - 2.0, p - 1.0, p - 1.0, p});
    tr.B(1, 2) = g(3.0 * (p - 2.0) * (2.0 * p + 1.0), {p - 1.0, p - 1.0, p, 2.0 * p - 3.0});
    tr.B(2, 1) = g(3.0 * (p - 2.0) * (2.0 * p + 1.0), {p - 1.0, p - 1.0, p, 2.0 * p - 1.0});
    tr.B(2, 2) = g(-3.0 * (2.0 * p * p - 2.0 * p - 3.0), {p - 1.0, p - 1.0, p, p});
    tr.B(2, 3) = g(3.0 * (p + 1.0) * (2.0 * p - 3.0), {p - 1.0, p, p, 2.0 * p - 1.0});
    tr.B(3, 2) = g(3.0 * (p + 1.0) * (2.0 * p - 3.0), {p - 1.0, p, p, 2.0 * p + 1.0});
    tr.B(3, 3) = g(-(5.0 * p * p - 9.0), {p - 1.0, p, p, p + 1.0});
    tr.B(3, 4) = g(2.0 * (2.0 * p + 3.0), {p, p + 1.0, 2.0 * p + 1.0});
    tr.B(4, 3) = g(2.0 * one, {p, p + 1.0});
    tr.B(4, 4) = g(-2.0 * one, {p, p + 1.0});

    tr.C(0, 0) = g(2.0 * p + 1.0, {2.0 * p - 1.0});
    tr.C(1, 0) = g(2.0 * (2.0 * p + 1.0), {p - 1.0, p, 2.0 * p - 1.0});
    tr.C(1, 1) = g((p - 2.0) * (p + 1.0) * (2.0 * p + 1.0), {p - 1.0, p, 2.0 * p - 1.0});
    tr.C(2, 0) = g(6.0 * one, {p - 1.0, p, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.C(2, 1) = g(3.0 * (p + 1.0) * (2.0 * p - 3.0), {p - 1.0, p, p, 2.0 * p - 1.0});
    tr.C(2, 2) = g((p - 1.0) * (p + 1.0) * (2.0 * p - 3.0) * (2.0 * p + 3.0),
                   {p, p, 2.0 * p - 1.0, 2.0 * p - 1.0});
    tr.C(3, 1) = g(9.0 * one, {p, p, 2.0 * p - 1.0, 2.0 * p + 1.0});
    tr.C(3, 2) = g(3.0 * (p - 1.0) * (2.0 * p + 3.0), {p, p, p + 1.0, 2.0 * p - 1.0});
    tr.C(3, 3) = g((p - 1.0) * (p + 2.0) * (2.0 * p + 3.0), {p, p + 1.0, 2.0 * p + 1.0});
    tr.C(4, 2) = g(6.0 * one, {p + 1.0, p, 2.0 * p - 1.0, 2.0 * p + 3.0});
    tr.C(4, 3) = g(2.0 * one, {p, p + 1.0});
    tr.C(4, 4) = g(2.0 * p + 5.0, {2.0 * p + 3.0});
    return tr;
  }
  throw Error("reference_tables: tables exist only for ell in {0,1,3,4}");
}

double verify_recursion(int ell, const cplx& p, const RecursionTriple& triple,
                        const std::vector<double>& t_probe_grid) {
  const PhiStack st = phi_stack(ell, p, t_probe_grid);
  return stack_residual(st, t_probe_grid, triple);
}

namespace {

/// Column groups of the matrix multiplying Phi(t, q): columns j and j' act
/// on identical rows when mu_j(q) = mu_j'(q), i.e. the families coincide.
std::vector<std::vector<int>> column_groups(int ell, const cplx& q) {
  std::vector<int> rep(ell + 1);
  for (int j = 0; j <= ell; ++j) rep[j] = j;
  for (const auto& pr : repmat::mu_degeneracies(ell, q)) rep[pr.first] = rep[pr.second];
  std::vector<std::vector<int>> groups;
  for (int j = 0; j <= ell; ++j) {
    if (rep[j] == j) {
      groups.push_back({j});
      for (int j2 = j + 1; j2 <= ell; ++j2)
        if (rep[j2] == j) groups.back().push_back(j2);
    }
  }
  return groups;
}

double collapsed_deviation(int ell, const cplx& q, const Eigen::MatrixXcd& x,
                           const Eigen::MatrixXcd& y) {
  double dev = 0.0;
  const auto groups = column_groups(ell, q);
  for (int k = 0; k <= ell; ++k) {
    for (const auto& g : groups) {
      cplx xs(0.0), ys(0.0);
      for (int j : g) {
        xs += x(k, j);
        ys += y(k, j);
      }
      dev = std::max(dev, std::abs(xs - ys) / (1.0 + std::abs(ys)));
    }
  }
  return dev;
}

}  // namespace

double compare_triples(int ell, const cplx& p, const RecursionTriple& a,
                       const RecursionTriple& b) {
  return std::max({collapsed_deviation(ell, p - 1.0, a.A, b.A),
                   collapsed_deviation(ell, p, a.B, b.B),
                   collapsed_deviation(ell, p + 1.0, a.C, b.C)});
}

}  // namespace bispectral
}  // namespace mvsf
