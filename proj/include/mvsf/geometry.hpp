#ifndef MVSF_GEOMETRY_HPP
#define MVSF_GEOMETRY_HPP

#include "mvsf/specfun.hpp"

namespace mvsf {
namespace geometry {

/// Point (z, r) of hyperbolic 3-space H = C x R_{>0}.
struct HPoint {
  cplx z{0.0, 0.0};
  double r = 1.0;
};

/// Element of SL(2,C), row major [[a, b], [c, d]].
struct GroupElement {
  cplx a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};
  cplx det() const { return a * d - b * c; }
};

/// K-orbit data: the axis parameter s in (0,1] and A in SU(2) moving
/// (0, s) onto the decomposed point.
struct OrbitDecomposition {
  double s = 1.0;
  GroupElement A;
};

/// g |-> g g* (0,1)^T = (a conj(c) + b conj(d), |c|^2 + |d|^2).
HPoint project(const GroupElement& g);

/// Left action of SL(2,C) on H through the quotient model.
HPoint act(const GroupElement& g, const HPoint& pt);

/// Inverse of the orbit map psi on the chart H - {(0,r): r >= 1}; the fixed
/// point (0,1) returns s = 1, A = I. Throws OutOfChart for (0,r) with r > 1;
/// callers decompose (0, 1/r) instead and use the s <-> 1/s orbit symmetry.
OrbitDecomposition orbit_decompose(const HPoint& pt);

}  // namespace geometry
}  // namespace mvsf

#endif  // MVSF_GEOMETRY_HPP
