#include <doctest.h>

#include <cmath>
#include <random>

#include "mvsf/geometry.hpp"

using namespace mvsf;
using namespace mvsf::geometry;

namespace {

std::mt19937 rng(140034);

GroupElement random_unimodular() {
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  GroupElement g;
  g.a = cplx(U(rng) + 2.0, U(rng));  // keep a away from zero
  g.b = cplx(U(rng), U(rng));
  g.c = cplx(U(rng), U(rng));
  g.d = (1.0 + g.b * g.c) / g.a;
  return g;
}

GroupElement random_su2() {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  cplx a(U(rng), U(rng)), b(U(rng), U(rng));
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  GroupElement k;
  k.a = a;
  k.b = b;
  k.c = -std::conj(b);
  k.d = std::conj(a);
  return k;
}

}  // namespace

TEST_CASE("project") {
  const GroupElement id;
  const HPoint o = project(id);
  CHECK(o.z == cplx(0.0));
  CHECK(o.r == 1.0);

  for (double s : {0.4, 2.5}) {
    GroupElement g;
    g.a = cplx(s);
    g.d = cplx(1.0 / s);
    const HPoint pt = project(g);
    CHECK(std::abs(pt.z) < 1e-15);
    CHECK(pt.r == doctest::Approx(1.0 / (s * s)).epsilon(1e-14));
  }

  for (int trial = 0; trial < 20; ++trial) {
    const GroupElement g = random_unimodular();
    const GroupElement k = random_su2();
    GroupElement gk;
    gk.a = g.a * k.a + g.b * k.c;
    gk.b = g.a * k.b + g.b * k.d;
    gk.c = g.c * k.a + g.d * k.c;
    gk.d = g.c * k.b + g.d * k.d;
    const HPoint p1 = project(g), p2 = project(gk);
    CHECK(std::abs(p1.z - p2.z) < 1e-12);
    CHECK(std::abs(p1.r - p2.r) < 1e-12);
  }

  GroupElement bad;
  bad.a = cplx(2.0);
  CHECK_THROWS_AS(project(bad), NotUnimodular);
}

TEST_CASE("action") {
  const GroupElement id;
  const HPoint pt{cplx(0.7, -0.4), 1.9};
  const HPoint same = act(id, pt);
  CHECK(std::abs(same.z - pt.z) < 1e-15);
  CHECK(same.r == doctest::Approx(pt.r));

  for (int trial = 0; trial < 20; ++trial) {
    const GroupElement g = random_unimodular();
    const HPoint via_act = act(g, project(id));
    const HPoint via_proj = project(g);
    CHECK(std::abs(via_act.z - via_proj.z) < 1e-12);
    CHECK(std::abs(via_act.r - via_proj.r) < 1e-12);
  }

  // Group action axiom, against the direct matrix product.
  for (int trial = 0; trial < 20; ++trial) {
    const GroupElement g = random_unimodular();
    const GroupElement h = random_unimodular();
    GroupElement gh;
    gh.a = g.a * h.a + g.b * h.c;
    gh.b = g.a * h.b + g.b * h.d;
    gh.c = g.c * h.a + g.d * h.c;
    gh.d = g.c * h.b + g.d * h.d;
    const HPoint pt2{cplx(0.3, 0.8), 0.6};
    const HPoint lhs = act(g, act(h, pt2));
    const HPoint rhs = act(gh, pt2);
    CHECK(std::abs(lhs.z - rhs.z) < 1e-10);
    CHECK(std::abs(lhs.r - rhs.r) < 1e-10);
  }
}

TEST_CASE("orbit decomposition") {
  {
    const OrbitDecomposition od = orbit_decompose({cplx(0.0), 0.25});
    CHECK(od.s == 0.25);
    CHECK(od.A.a == cplx(1.0));
    CHECK(od.A.b == cplx(0.0));
  }
  {
    const OrbitDecomposition od = orbit_decompose({cplx(0.0), 1.0});
    CHECK(od.s == 1.0);
  }
  {
    const OrbitDecomposition od = orbit_decompose({cplx(1.0), 1.0});
    CHECK(od.s == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    const HPoint back = act(od.A, {cplx(0.0), od.s});
    CHECK(std::abs(back.z - cplx(1.0)) < 1e-10);
    CHECK(std::abs(back.r - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(orbit_decompose({cplx(0.0), 2.0}), OutOfChart);
}

TEST_CASE("orbit decomposition properties on random chart points") {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    HPoint pt{cplx(U(rng), U(rng)), std::abs(U(rng)) + 0.05};
    if (std::abs(pt.z) < 1e-6) pt.z = cplx(0.5, 0.1);
    const OrbitDecomposition od = orbit_decompose(pt);
    CHECK(od.s > 0.0);
    CHECK(od.s <= 1.0);
    // A is in SU(2).
    CHECK(std::abs(od.A.det() - 1.0) <= 1e-12);
    CHECK(std::abs(std::norm(od.A.a) + std::norm(od.A.b) - 1.0) <= 1e-12);
    CHECK(std::abs(od.A.c + std::conj(od.A.b)) <= 1e-12);
    CHECK(std::abs(od.A.d - std::conj(od.A.a)) <= 1e-12);
    // Round trip.
    const HPoint back = act(od.A, {cplx(0.0), od.s});
    CHECK(std::abs(back.z - pt.z) <= 1e-10 * (1.0 + std::abs(pt.z)));
    CHECK(std::abs(back.r - pt.r) <= 1e-10 * (1.0 + pt.r));
    // The two eigenvalues s, 1/s multiply to one: recompute the companion.
    const double zz = std::norm(pt.z);
    const double rad = (zz + (pt.r + 1.0) * (pt.r + 1.0)) * (zz + (1.0 - pt.r) * (1.0 - pt.r));
    const double s_inv = (1.0 + zz + pt.r * pt.r + std::sqrt(rad)) / (2.0 * pt.r);
    CHECK(od.s * s_inv == doctest::Approx(1.0).epsilon(1e-10));
  }
}
