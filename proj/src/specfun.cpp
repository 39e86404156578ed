#include "mvsf/specfun.hpp"

#include <cmath>
#include <sstream>

namespace mvsf {
namespace specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt_params(const cplx& a, const cplx& b, const cplx& c, double z) {
  std::ostringstream os;
  os << "a=(" << a.real() << "," << a.imag() << ") b=(" << b.real() << ","
     << b.imag() << ") c=(" << c.real() << "," << c.imag() << ") z=" << z;
  return os.str();
}

/// If x is an exact integer within |x| < 2^53, return it; otherwise nullopt-ish
/// flag through the bool.
bool exact_int(const cplx& x, long long* out) {
  if (x.imag() != 0.0) return false;
  double r = x.real();
  if (r != std::floor(r) || std::abs(r) > 9.0e15) return false;
  *out = static_cast<long long>(r);
  return true;
}

}  // namespace

bool is_nonpos_int(const cplx& x) {
  long long n = 0;
  return exact_int(x, &n) && n <= 0;
}

cplx pochhammer(const cplx& x, int n) {
  cplx prod(1.0, 0.0);
  for (int m = 0; m < n; ++m) prod *= x + static_cast<double>(m);
  return prod;
}

cplx log_gamma(cplx z) {
  // Lanczos, g = 7, 9 coefficients.
  static const double kCoef[9] = {
      0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,  12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Reflection: logG(z) = log(pi / sin(pi z)) - logG(1 - z).
    return std::log(kPi / std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  cplx x = kCoef[0];
  for (int i = 1; i < 9; ++i) x += kCoef[i] / (z + static_cast<double>(i));
  cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx digamma(cplx z) {
  cplx shift(0.0, 0.0);
  // Reflection for the left half plane keeps the recurrence short.
  if (z.real() < 0.5) {
    return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  }
  while (z.real() < 8.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  // Asymptotic series with Bernoulli numbers B2..B14.
  static const double kBern[7] = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,
                                  -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0,
                                  7.0 / 6.0};
  cplx inv2 = 1.0 / (z * z);
  cplx sum(0.0, 0.0);
  cplx pw = inv2;
  for (int n = 0; n < 7; ++n) {
    sum += kBern[n] / (2.0 * (n + 1)) * pw;
    pw *= inv2;
  }
  return shift + std::log(z) - 0.5 / z - sum;
}

HyperSeriesResult gauss2f1(const cplx& a, const cplx& b, const cplx& c, double z) {
  HyperSeriesResult res;
  // Termination index if a or b is a nonpositive integer.
  long long ta = -1, tb = -1, ia = 0, ib = 0;
  if (exact_int(a, &ia) && ia <= 0) ta = -ia;
  if (exact_int(b, &ib) && ib <= 0) tb = -ib;
  long long nterm = -1;
  if (ta >= 0 && tb >= 0) nterm = std::min(ta, tb);
  else if (ta >= 0) nterm = ta;
  else if (tb >= 0) nterm = tb;

  cplx sum(1.0, 0.0);
  cplx term(1.0, 0.0);
  res.terms_used = 1;
  if (z == 0.0 || nterm == 0) {
    res.value = sum;
    res.trunc_estimate = 0.0;
    return res;
  }
  int small_streak = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    cplx den = c + static_cast<double>(n);
    if (den == 0.0) {
      throw PoleBeforeTermination("gauss2f1: (c)_n vanished before termination, " +
                                  fmt_params(a, b, c, z));
    }
    term *= (a + static_cast<double>(n)) * (b + static_cast<double>(n)) * z /
            (den * static_cast<double>(n + 1));
    sum += term;
    ++res.terms_used;
    if (nterm >= 0 && n + 1 == nterm) {
      res.value = sum;
      res.trunc_estimate = 0.0;  // exact polynomial
      return res;
    }
    if (std::abs(term) <= kRelTol * std::abs(sum)) {
      if (++small_streak >= 2) {
        res.value = sum;
        res.trunc_estimate = std::abs(term);
        return res;
      }
    } else {
      small_streak = 0;
    }
  }
  throw NoConvergence("gauss2f1: term cap reached, " + fmt_params(a, b, c, z));
}

cplx gauss2f1_deriv(const cplx& a, const cplx& b, const cplx& c, double z, int order) {
  if (order == 1) {
    return a * b / c * gauss2f1(a + 1.0, b + 1.0, c + 1.0, z).value;
  }
  if (order == 2) {
    return a * b / c * (a + 1.0) * (b + 1.0) / (c + 1.0) *
           gauss2f1(a + 2.0, b + 2.0, c + 2.0, z).value;
  }
  throw Error("gauss2f1_deriv: order must be 1 or 2");
}

namespace {

/// A&S 15.3.10: 2F1(a,b;a+b;z) around z = 1, w = 1-z.
HyperSeriesResult near1_log0(const cplx& a, const cplx& b, double w) {
  HyperSeriesResult res;
  const double lw = std::log(w);
  cplx front = std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b));
  cplx coef(1.0, 0.0);  // (a)_n (b)_n / (n!)^2
  cplx sum(0.0, 0.0);
  int small_streak = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    double dn = static_cast<double>(n);
    cplx bracket = 2.0 * digamma(cplx(dn + 1.0)) - digamma(a + dn) -
                   digamma(b + dn) - lw;
    cplx term = coef * bracket;
    sum += term;
    ++res.terms_used;
    if (std::abs(term) <= kRelTol * std::abs(sum) && n > 0) {
      if (++small_streak >= 2) {
        res.value = front * sum;
        res.trunc_estimate = std::abs(front * term);
        return res;
      }
    } else {
      small_streak = 0;
    }
    coef *= (a + dn) * (b + dn) / ((dn + 1.0) * (dn + 1.0)) * w;
  }
  throw NoConvergence("gauss2f1_near1: log series (m=0) did not converge");
}

/// A&S 15.3.11: 2F1(a,b;a+b+m;z), m >= 1 integer, around z = 1, w = 1-z.
HyperSeriesResult near1_logm(const cplx& a, const cplx& b, int m, double w) {
  HyperSeriesResult res;
  const double lw = std::log(w);
  const cplx c = a + b + static_cast<double>(m);
  // Finite part.
  cplx fin(0.0, 0.0);
  {
    cplx coef(1.0, 0.0);  // (a)_n (b)_n / (n! (1-m)_n)
    for (int n = 0; n < m; ++n) {
      double dn = static_cast<double>(n);
      fin += coef;
      if (n + 1 < m)
        coef *= (a + dn) * (b + dn) / ((dn + 1.0) * (1.0 - m + dn)) * w;
    }
    fin *= std::exp(log_gamma(cplx(static_cast<double>(m))) + log_gamma(c) -
                    log_gamma(a + static_cast<double>(m)) -
                    log_gamma(b + static_cast<double>(m)));
    res.terms_used = m;
  }
  // Logarithmic part.
  cplx front = std::exp(log_gamma(c) - log_gamma(a) - log_gamma(b));
  if (m % 2) front = -front;
  front *= std::pow(cplx(w), static_cast<double>(m));
  const cplx am = a + static_cast<double>(m), bm = b + static_cast<double>(m);
  cplx coef = 1.0 / std::tgamma(static_cast<double>(m) + 1.0);
  cplx sum(0.0, 0.0);
  int small_streak = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    double dn = static_cast<double>(n);
    cplx bracket = lw - digamma(cplx(dn + 1.0)) - digamma(cplx(dn + m + 1.0)) +
                   digamma(am + dn) + digamma(bm + dn);
    cplx term = coef * bracket;
    sum += term;
    ++res.terms_used;
    double scale = std::abs(fin) + std::abs(front * sum);
    if (std::abs(front * term) <= kRelTol * scale && n > 0) {
      if (++small_streak >= 2) {
        res.value = fin - front * sum;
        res.trunc_estimate = std::abs(front * term);
        return res;
      }
    } else {
      small_streak = 0;
    }
    coef *= (am + dn) * (bm + dn) / ((dn + 1.0) * (dn + m + 1.0)) * w;
  }
  throw NoConvergence("gauss2f1_near1: log series (m>0) did not converge");
}

/// Generic connection formula, c-a-b not an integer.
HyperSeriesResult near1_generic(const cplx& a, const cplx& b, const cplx& c, double w) {
  const cplx s = c - a - b;
  HyperSeriesResult f1 = gauss2f1(a, b, 1.0 - s, w);
  HyperSeriesResult f2 = gauss2f1(c - a, c - b, 1.0 + s, w);
  cplx g1 = std::exp(log_gamma(c) + log_gamma(s) - log_gamma(c - a) - log_gamma(c - b));
  cplx g2 = std::exp(log_gamma(c) + log_gamma(-s) - log_gamma(a) - log_gamma(b));
  HyperSeriesResult res;
  res.value = g1 * f1.value + std::pow(cplx(w), s) * g2 * f2.value;
  res.terms_used = f1.terms_used + f2.terms_used;
  res.trunc_estimate = std::abs(g1) * f1.trunc_estimate +
                       std::abs(g2) * f2.trunc_estimate;
  return res;
}

}  // namespace

HyperSeriesResult gauss2f1_near1(const cplx& a, const cplx& b, const cplx& c, double z) {
  if (is_nonpos_int(a) || is_nonpos_int(b)) return gauss2f1(a, b, c, z);
  const double w = 1.0 - z;
  if (w >= 0.25) return gauss2f1(a, b, c, z);  // direct series is fine there
  const cplx s = c - a - b;
  long long m = 0;
  if (exact_int(s, &m)) {
    if (m < 0) {
      // Euler transformation flips the gap sign.
      HyperSeriesResult inner = gauss2f1_near1(c - a, c - b, c, z);
      inner.value *= std::pow(cplx(w), s);
      inner.trunc_estimate *= std::pow(w, static_cast<double>(m));
      return inner;
    }
    if (m == 0) return near1_log0(a, b, w);
    return near1_logm(a, b, static_cast<int>(m), w);
  }
  // The connection series carry inner denominator parameters 1 -+ s; when
  // |a b w| outruns them the two terms grow before they cancel and digits
  // are lost, so prefer the (always well conditioned) direct sum whenever
  // it can converge within the term cap.
  const double growth =
      w * std::max(std::abs(a * b) / std::abs(1.0 - s),
                   std::abs((c - a) * (c - b)) / std::abs(1.0 + s));
  const double direct_cost = 40.0 / w;  // rough term count for the tail
  if (growth > 0.7 && direct_cost < 0.8 * kMaxTerms) return gauss2f1(a, b, c, z);
  return near1_generic(a, b, c, w);
}

namespace {

/// Reduced fraction on __int128; ample headroom for the Hahn entries of any
/// type this library handles (numerators stay below ~1e18 for ell <= 25).
struct Frac {
  __int128 num = 0, den = 1;
  void reduce() {
    __int128 a = num < 0 ? -num : num, b = den;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
  }
  void mul(long long n, long long d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    num *= n;
    den *= d;
    reduce();
  }
  void add(const Frac& o) {
    num = num * o.den + o.num * den;
    den *= o.den;
    reduce();
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool big() const {
    const __int128 lim = static_cast<__int128>(1) << 100;
    return num > lim || -num > lim || den > lim;
  }
};

/// Exact path for all-integer parameters; the alternating (b2)_n terms make
/// the double-precision sum lose digits for larger parameters.
bool f32_exact_int(int a1, long long a2, long long a3, long long b1, long long b2,
                   double* out) {
  Frac sum{1, 1}, term{1, 1};
  for (int n = 0; n < -a1; ++n) {
    const long long d1 = b1 + n, d2 = b2 + n;
    if (d1 == 0 || d2 == 0) {
      if (term.num == 0) break;
      throw PoleBeforeTermination("f32_terminating: denominator Pochhammer vanished");
    }
    term.mul(a1 + n, d1);
    term.mul(a2 + n, d2);
    term.mul(a3 + n, n + 1);
    if (term.big() || sum.big()) return false;  // fall back to floating point
    sum.add(term);
    if (term.num == 0) break;
  }
  *out = sum.value();
  return true;
}

}  // namespace

cplx f32_terminating(int a1, const cplx& a2, const cplx& a3, const cplx& b1,
                     const cplx& b2) {
  if (a1 > 0) throw Error("f32_terminating: a1 must be a nonpositive integer");
  long long i2 = 0, i3 = 0, j1 = 0, j2 = 0;
  if (exact_int(a2, &i2) && exact_int(a3, &i3) && exact_int(b1, &j1) &&
      exact_int(b2, &j2)) {
    double exact = 0.0;
    if (f32_exact_int(a1, i2, i3, j1, j2, &exact)) return cplx(exact, 0.0);
  }
  const int nmax = -a1;
  cplx sum(0.0, 0.0);
  cplx term(1.0, 0.0);
  for (int n = 0; n <= nmax; ++n) {
    sum += term;
    if (n == nmax) break;
    double dn = static_cast<double>(n);
    cplx d1 = b1 + dn, d2 = b2 + dn;
    if (d1 == 0.0 || d2 == 0.0) {
      throw PoleBeforeTermination("f32_terminating: denominator Pochhammer vanished");
    }
    term *= (static_cast<double>(a1) + dn) * (a2 + dn) * (a3 + dn) /
            (d1 * d2 * (dn + 1.0));
    if (term == 0.0) break;  // an upper parameter terminated earlier
  }
  return sum;
}

cplx gauss_sum_at_1(const cplx& a, const cplx& b, const cplx& c) {
  const cplx s = c - a - b;
  if (s.real() <= 0.0) {
    throw DivergentAtOne("gauss_sum_at_1: Re(c-a-b) <= 0, " + fmt_params(a, b, c, 1.0));
  }
  // Gamma poles in the denominator force a zero value.
  if (is_nonpos_int(c - a) || is_nonpos_int(c - b)) return cplx(0.0, 0.0);
  return std::exp(log_gamma(c) + log_gamma(s) - log_gamma(c - a) - log_gamma(c - b));
}

}  // namespace specfun
}  // namespace mvsf
