#include "mvsf/geometry.hpp"

#include <cmath>
#include <limits>

namespace mvsf {
namespace geometry {

namespace {

void check_unimodular(const GroupElement& g) {
  if (std::abs(g.det() - 1.0) > 1e-12)
    throw NotUnimodular("group element determinant is not 1");
}

}  // namespace

HPoint project(const GroupElement& g) {
  check_unimodular(g);
  HPoint pt;
  pt.z = g.a * std::conj(g.c) + g.b * std::conj(g.d);
  pt.r = std::norm(g.c) + std::norm(g.d);
  return pt;
}

HPoint act(const GroupElement& g, const HPoint& pt) {
  check_unimodular(g);
  const cplx z = pt.z;
  const double r = pt.r;
  HPoint out;
  out.z = (g.a * std::conj(g.c) +
           (g.a * z + g.b * r) * (std::conj(g.c) * std::conj(z) + std::conj(g.d) * r)) /
          r;
  out.r = (std::norm(g.c) + std::norm(g.c * z + g.d * r)) / r;
  return out;
}

OrbitDecomposition orbit_decompose(const HPoint& pt) {
  OrbitDecomposition out;
  const double zz = std::norm(pt.z);
  const double r = pt.r;
  if (zz == 0.0) {
    if (r > 1.0) throw OutOfChart("orbit_decompose: point (0,r) with r > 1");
    out.s = r;  // includes the fixed point r = 1
    return out;
  }
  // Both radicand factors are positive on the chart; no cancellation.
  const double rad = (zz + (r + 1.0) * (r + 1.0)) * (zz + (1.0 - r) * (1.0 - r));
  double s = (1.0 + zz + r * r - std::sqrt(rad)) / (2.0 * r);
  s = std::min(s, 1.0);
  if (s <= 0.0) s = std::numeric_limits<double>::min();
  out.s = s;
  const double nrm = std::hypot(1.0 - r * s, s * std::sqrt(zz));
  const cplx a = cplx((1.0 - r * s) / nrm, 0.0);
  const cplx b = s * pt.z / nrm;
  // k = [[a, b], [-conj b, conj a]] sends pt to (0,s); A is its inverse.
  out.A.a = std::conj(a);
  out.A.b = -b;
  out.A.c = std::conj(b);
  out.A.d = a;
  return out;
}

}  // namespace geometry
}  // namespace mvsf
