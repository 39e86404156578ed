#include "mvsf/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "mvsf/bispectral.hpp"
#include "mvsf/output.hpp"
#include "mvsf/verify.hpp"

namespace mvsf {
namespace cli {

namespace {

using nlohmann::json;
using output::complex_to_json;

constexpr double kTLo = 1e-6;
constexpr double kTHi = 1.0 - 1e-9;

cplx parse_complex(const std::string& s) {
  std::istringstream is(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(is >> re)) throw CLI::ValidationError("complex", "expected re[,im]: " + s);
  if (is >> comma) {
    if (comma != ',' || !(is >> im))
      throw CLI::ValidationError("complex", "expected re[,im]: " + s);
  }
  std::string rest;
  if (is >> rest) throw CLI::ValidationError("complex", "trailing input: " + s);
  return {re, im};
}

std::vector<double> parse_t_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

json complex_str(const cplx& z) { return complex_to_json(z); }

json vector_to_json(const Eigen::VectorXcd& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(complex_str(v(i)));
  return arr;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_str(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

const char* class_name(spherical::TwoPClass c) {
  switch (c) {
    case spherical::TwoPClass::Generic: return "generic";
    case spherical::TwoPClass::IntegerGE1: return "integer_ge1";
    case spherical::TwoPClass::IntegerLE0: return "integer_le0";
    case spherical::TwoPClass::HalfLine: return "half_line";
  }
  return "?";
}

struct EvalOpts {
  int ell = 0, k = 0, n = 0;
  std::string p, t, format = "json";
  double tmin = 0.0, tmax = 0.0;
};

int cmd_eval(const EvalOpts& o, std::ostream& out) {
  const cplx p = parse_complex(o.p);
  std::vector<double> ts;
  if (!o.t.empty()) {
    ts = parse_t_list(o.t);
  } else if (o.n > 0) {
    for (int i = 0; i < o.n; ++i) {
      ts.push_back(o.n == 1 ? o.tmin
                            : o.tmin + (o.tmax - o.tmin) * i / (o.n - 1.0));
    }
  }
  if (ts.empty()) throw CLI::ValidationError("--t", "no evaluation points given");
  for (double t : ts) {
    if (!(t >= kTLo && t <= kTHi))
      throw CLI::ValidationError("--t", "t values must lie in [1e-6, 1-1e-9]");
  }
  const spherical::FamilyDescriptor fam = spherical::build_family(o.ell, o.k, p);

  std::vector<spherical::VectorSample> samples;
  samples.reserve(ts.size());
  for (double t : ts) samples.push_back(spherical::eval_H(fam, t));

  if (o.format == "csv") {
    out << "t";
    for (int i = 0; i <= o.ell; ++i) out << ",re_h" << i << ",im_h" << i;
    out << "\n";
    for (const auto& s : samples) {
      out << output::format_double(s.t);
      for (int i = 0; i <= o.ell; ++i)
        out << ',' << output::format_double(s.H(i).real()) << ','
            << output::format_double(s.H(i).imag());
      out << "\n";
    }
    return 0;
  }

  json rows = json::array();
  for (const auto& s : samples) {
    json row;
    row["t"] = s.t;
    row["H"] = vector_to_json(s.H);
    row["check_H"] = vector_to_json(s.check_H);
    rows.push_back(row);
  }
  json params{{"ell", o.ell}, {"k", o.k}, {"p", complex_str(p)}};
  json diag;
  diag["branch"] = fam.branch == spherical::Branch::IntegerMixed ? "integer_mixed"
                                                                 : "generic_hyper";
  diag["mirrored"] = fam.params.mirrored;
  diag["degenerate_a0"] = fam.degenerate_a0;
  json warnings = json::array();
  if (fam.params.near_integer_warning)
    warnings.push_back("2p within 1e-5 of an integer: ill-conditioned coefficients");
  diag["warnings"] = warnings;
  output::write_json(out, output::make_record("eval", params, {{"rows", rows}}, diag));
  return 0;
}

int cmd_family(int ell, int k, const std::string& pstr, std::ostream& out) {
  const cplx p = parse_complex(pstr);
  const spherical::FamilyDescriptor fam = spherical::build_family(ell, k, p);
  json res;
  res["lambda"] = complex_str(fam.params.lambda);
  res["mu"] = complex_str(fam.params.mu);
  res["p_normalized"] = complex_str(fam.params.p);
  res["k_normalized"] = fam.params.k;
  res["two_p_class"] = class_name(fam.params.two_p_class);
  res["branch"] = fam.branch == spherical::Branch::IntegerMixed ? "integer_mixed"
                                                                : "generic_hyper";
  res["a"] = vector_to_json(fam.a);
  res["alpha"] = vector_to_json(fam.alpha);
  json equiv = json::array();
  for (const auto& e : spherical::equivalents(ell, p, k)) {
    equiv.push_back(json{{"p", complex_str(e.first)}, {"k", e.second}});
  }
  res["equivalence_class"] = equiv;
  res["unitarizable"] = fam.unitarizable;
  res["v"] = complex_str(fam.v);
  res["r"] = fam.r;
  res["omega_eig"] = complex_str(fam.omega_eig);
  res["omega_bar_eig"] = complex_str(fam.omega_bar_eig);
  res["degenerate_a0"] = fam.degenerate_a0;
  json params{{"ell", ell}, {"k", k}, {"p", complex_str(p)}};
  output::write_json(out, output::make_record("family", params, res, json::object()));
  return 0;
}

struct VerifyOpts {
  int ell = 0, k = -1, grid = 40;
  std::string p, suite = "all";
  double tol = 1e-8;
};

/// Suite gates: --tol drives the residual checks; the remaining suites are
/// floored at their documented thresholds (limits 1e-5 / 1e-4 log,
/// connection 1e-10, closed-form 1e-9, cross-oracle 1e-7) so a loose --tol
/// loosens everything and a tight one cannot demand more than the methods
/// deliver.
int cmd_verify(const VerifyOpts& o, std::ostream& out) {
  const cplx p = parse_complex(o.p);
  const bool all = o.suite == "all";
  json checks = json::array();
  bool pass = true;
  std::string worst_name;
  double worst_excess = 0.0;

  auto record = [&](const std::string& name, double value, double gate) {
    json c{{"check", name}, {"max_residual", value}, {"tolerance", gate},
           {"pass", value <= gate}};
    checks.push_back(c);
    if (value > gate) {
      pass = false;
      if (value / gate > worst_excess) {
        worst_excess = value / gate;
        worst_name = name;
      }
    }
  };

  std::vector<int> ks;
  if (o.k >= 0) ks.push_back(o.k);
  else for (int k = 0; k <= o.ell; ++k) ks.push_back(k);

  std::vector<spherical::FamilyDescriptor> fams;
  for (int k : ks) fams.push_back(spherical::build_family(o.ell, k, p));

  if (all || o.suite == "residual") {
    std::vector<double> grid(o.grid);
    for (int i = 0; i < o.grid; ++i)
      grid[i] = 0.05 + (0.95 - 0.05) * i / std::max(o.grid - 1, 1);
    for (size_t fi = 0; fi < fams.size(); ++fi) {
      const auto dr = verify::d_residual(fams[fi], grid);
      const auto er = verify::e_residual(fams[fi], grid);
      record("residual_d_k" + std::to_string(ks[fi]), dr.max_d, o.tol);
      record("residual_e_k" + std::to_string(ks[fi]), er.max_e, o.tol);
    }
  }
  if (all || o.suite == "limits") {
    for (size_t fi = 0; fi < fams.size(); ++fi) {
      const auto& fam = fams[fi];
      const bool log_case =
          fam.params.two_p_class == spherical::TwoPClass::IntegerGE1 &&
          std::llround(2.0 * fam.params.p.real()) == 1;
      if (!log_case && !(2.0 * fam.params.p.real() > 1.0 + 1e-9)) continue;
      const auto eta = verify::eta_limit(fam);
      record("limits_eta_k" + std::to_string(ks[fi]), eta.max_dev,
             std::max(o.tol, log_case ? 1e-4 : 1e-5));
    }
  }
  if (all || o.suite == "connection") {
    double worst = 0.0;
    int used = 0;
    for (int i = 0; i <= std::min(o.ell, 6); ++i) {
      for (double t : {0.25, 0.5, 0.75}) {
        try {
          worst = std::max(worst, verify::connection_check(p, i, t));
          ++used;
        } catch (const Error&) {
          // integer 2p inside [1-i, i+1]: identity not applicable there
        }
      }
    }
    if (used > 0) record("connection", worst, std::max(o.tol, 1e-10));
  }
  if (all || o.suite == "oracle") {
    if (o.ell <= 2) {
      double worst = 0.0;
      for (size_t fi = 0; fi < fams.size(); ++fi) {
        for (double t : {0.1, 0.25, 0.5, 0.75, 0.9}) {
          const Eigen::VectorXcd ref = verify::closed_form_oracle(o.ell, ks[fi], p, t);
          const Eigen::VectorXcd got = spherical::eval_H(fams[fi], t).H;
          worst = std::max(worst, (ref - got).cwiseAbs().maxCoeff());
        }
      }
      record("oracle_closed_form", worst, std::max(o.tol, 1e-9));
    }
    for (size_t fi = 0; fi < fams.size(); ++fi) {
      const auto& fam = fams[fi];
      // Cross-check against the adaptive integrator.
      Eigen::VectorXcd H0, H1, H2;
      spherical::eval_H_jet(fam, 0.5, &H0, &H1, &H2);
      const Eigen::VectorXcd at = verify::ode_oracle(o.ell, fam.params.lambda,
                                                     fam.params.mu, 0.5, H0, H1, 0.8);
      const Eigen::VectorXcd ref = spherical::eval_H(fam, 0.8).H;
      record("oracle_ode_k" + std::to_string(ks[fi]),
             (at - ref).cwiseAbs().maxCoeff(), std::max(o.tol, 1e-7));
      // Frobenius series route, generic 2p only.
      if (fam.branch == spherical::Branch::GenericHyper) {
        const auto pq = spherical::pq_decomposition(fam);
        const cplx pn = fam.params.p;
        // F_0 = P(0) seeds the coefficients of P(t)/(1-t)^{l+1} itself.
        verify::SeriesOracle sp(o.ell, pn, pq.P.col(0), 300);
        verify::SeriesOracle sq(o.ell, 1.0 - pn, pq.Q.col(0), 300);
        const double t = 0.3;
        const Eigen::VectorXcd srs = sp.eval(t) + sq.eval(t);
        const Eigen::VectorXcd ref2 = spherical::eval_H(fam, t).H;
        record("oracle_series_k" + std::to_string(ks[fi]),
               (srs - ref2).cwiseAbs().maxCoeff(), std::max(o.tol, 1e-7));
      }
    }
  }

  json params{{"ell", o.ell}, {"p", complex_str(p)}, {"suite", o.suite},
              {"grid", o.grid}, {"tol", o.tol}};
  if (o.k >= 0) params["k"] = o.k;
  json res{{"checks", checks}, {"pass", pass}};
  if (!pass) res["worst"] = worst_name;
  output::write_json(out, output::make_record("verify", params, res, json::object()));
  return pass ? 0 : 1;
}

struct BispOpts {
  int ell = 0, fit_grid = 40;
  std::string p;
  bool compare_paper = false;
};

int cmd_bispectral(const BispOpts& o, std::ostream& out) {
  const cplx p = parse_complex(o.p);
  const auto grid = bispectral::chebyshev_grid(o.fit_grid);
  const auto tr = bispectral::fit_recursion(o.ell, p, grid);
  const std::vector<double> probe{0.15, 0.35, 0.55, 0.75, 0.95};
  const double probe_res = bispectral::verify_recursion(o.ell, p, tr, probe);

  json res;
  res["A"] = matrix_to_json(tr.A);
  res["B"] = matrix_to_json(tr.B);
  res["C"] = matrix_to_json(tr.C);
  res["fit_residual"] = tr.fit_residual;
  res["probe_residual"] = probe_res;
  res["condition"] = tr.condition;

  int code = probe_res > 1e-6 || tr.fit_residual > 1e-6 ? 1 : 0;
  if (o.compare_paper) {
    const auto ref = bispectral::reference_tables(o.ell, p);
    const double dev = bispectral::compare_triples(o.ell, p, tr, ref);
    res["paper_deviation"] = dev;
    if (dev > 1e-6) code = 4;
  }
  json params{{"ell", o.ell}, {"p", complex_str(p)}, {"fit_grid", o.fit_grid},
              {"compare_paper", o.compare_paper}};
  output::write_json(out, output::make_record("bispectral", params, res, json::object()));
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"matrix-valued spherical functions of (SL(2,C), SU(2)) on (0,1)"};
  app.require_subcommand(1);

  EvalOpts eo;
  auto* eval = app.add_subcommand("eval", "evaluate H(t) for one family");
  eval->add_option("--ell", eo.ell, "type l >= 0")->required()->check(CLI::NonNegativeNumber);
  eval->add_option("--k", eo.k, "family index 0..l")->required();
  eval->add_option("--p", eo.p, "complex parameter re[,im]")->required();
  eval->add_option("--t", eo.t, "comma-separated t values in (0,1)");
  eval->add_option("--tmin", eo.tmin, "grid start");
  eval->add_option("--tmax", eo.tmax, "grid end");
  eval->add_option("--n", eo.n, "grid size");
  eval->add_option("--format", eo.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  int fa_ell = 0, fa_k = 0;
  std::string fa_p;
  auto* family = app.add_subcommand("family", "family metadata record");
  family->add_option("--ell", fa_ell)->required()->check(CLI::NonNegativeNumber);
  family->add_option("--k", fa_k)->required();
  family->add_option("--p", fa_p)->required();

  VerifyOpts vo;
  auto* verify_cmd = app.add_subcommand(
      "verify",
      "verification suites; --tol drives residual checks, other suites are "
      "floored at their documented thresholds");
  verify_cmd->add_option("--ell", vo.ell)->required()->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--p", vo.p)->required();
  verify_cmd->add_option("--k", vo.k, "restrict to one family");
  verify_cmd->add_option("--grid", vo.grid, "residual grid size")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol", vo.tol, "residual tolerance");
  verify_cmd->add_option("--suite", vo.suite)
      ->check(CLI::IsMember({"residual", "limits", "connection", "oracle", "all"}));

  BispOpts bo;
  auto* bis = app.add_subcommand("bispectral", "fit the three-term recursion in p");
  bis->add_option("--ell", bo.ell)->required()->check(CLI::NonNegativeNumber);
  bis->add_option("--p", bo.p)->required();
  bis->add_option("--fit-grid", bo.fit_grid)->check(CLI::PositiveNumber);
  bis->add_flag("--compare-paper", bo.compare_paper, "compare with the tabulated reference matrices");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*eval) {
      if (eo.k < 0 || eo.k > eo.ell) {
        err << "usage error: k out of range\n";
        return 2;
      }
      return cmd_eval(eo, out);
    }
    if (*family) {
      if (fa_k < 0 || fa_k > fa_ell) {
        err << "usage error: k out of range\n";
        return 2;
      }
      return cmd_family(fa_ell, fa_k, fa_p, out);
    }
    if (*verify_cmd) {
      if (vo.k > vo.ell) {
        err << "usage error: k out of range\n";
        return 2;
      }
      return cmd_verify(vo, out);
    }
    if (*bis) return cmd_bispectral(bo, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateEigenvector& e) {
    err << "exceptional parameter: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateDenominator& e) {
    err << "exceptional parameter: " << e.what() << "\n";
    return 3;
  } catch (const PrintedPole& e) {
    err << "exceptional parameter: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cli
}  // namespace mvsf
