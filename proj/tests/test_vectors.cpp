#include <cmath>

#include <doctest.h>

#include "stark/numerics.hpp"
#include "stark/vectors.hpp"

using namespace stark;

TEST_CASE("polynomial arithmetic and evaluation") {
  const Polynomial p({1.0, 2.0});        // 1 + 2y
  const Polynomial q({0.0, 0.0, 3.0});   // 3y^2
  const Polynomial r = p * q;            // 3y^2 + 6y^3
  CHECK(r.degree() == 3);
  CHECK(std::abs(r(Complex{2.0}) - Complex{60.0}) < 1e-14);
  CHECK((p - p).is_zero());
  CHECK(Polynomial::monomial(2, 4.0).coeff(2) == Complex{4.0});
  const Polynomial c({Complex{0.0, 1.0}});
  CHECK(c.conj().coeff(0) == Complex{0.0, -1.0});
}

TEST_CASE("polynomial integral and rescaling") {
  const Polynomial p({1.0, 0.0, 3.0});  // 1 + 3y^2
  CHECK(std::abs(p.integral(-1.0, 2.0) - Complex{3.0 + 9.0}) < 1e-13);
  const Polynomial q = p.rescaled(1.0, 2.0);  // p(1 + 2t)
  for (double t : {-1.0, 0.0, 0.4}) CHECK(std::abs(q(t) - p(1.0 + 2.0 * t)) < 1e-13);
}

TEST_CASE("site vectors") {
  SiteVector a{{{0, 1.0}, {2, Complex{0.0, 2.0}}}};
  SiteVector b{{{2, 1.0}, {5, 3.0}}};
  CHECK(a.norm2() == doctest::Approx(5.0));
  CHECK(std::abs(inner(a, b) - Complex{0.0, 2.0}) < 1e-15);
  CHECK(a.support()->first == 0);
  CHECK(a.support()->second == 2);
  CHECK(a.at(7) == Complex{});
}

TEST_CASE("lattice field vector norm, inner product and refinement") {
  LatticeFieldVector u = LatticeFieldVector::unit_constant(0);
  CHECK(u.norm2() == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  LatticeFieldVector v;
  v.set_uniform(0, Polynomial({0.0, 1.0}));  // y
  v.set_uniform(3, Polynomial({1.0}));
  CHECK(std::abs(inner(u, v)) < 1e-14);  // int y dy over (-pi, pi)
  CHECK(v.norm2() == doctest::Approx(2.0 * kPi * kPi * kPi / 3.0 + 2.0 * kPi).epsilon(1e-14));

  const LatticeFieldVector w = v.refined({-1.0, 0.5});
  CHECK(w.pieces() == 3);
  for (double y : {-3.0, -0.2, 0.7, 3.0}) CHECK(std::abs(w.value(0, y) - v.value(0, y)) < 1e-14);
  CHECK(w.norm2() == doctest::Approx(v.norm2()).epsilon(1e-14));
}

TEST_CASE("analytic vectors convert to single-piece lattice vectors") {
  AnalyticVector a;
  a.set(1, Polynomial({1.0, Complex{0.0, 1.0}}));
  const LatticeFieldVector l(a);
  CHECK(l.pieces() == 1);
  CHECK(std::abs(l.value(1, 0.5) - Complex{1.0, 0.5}) < 1e-15);
  CHECK(std::abs(l.value(0, 0.5)) == 0.0);
}

TEST_CASE("merge_breaks keeps a sorted union") {
  const auto m = merge_breaks({-kPi, 0.0, kPi}, {-kPi, 1.0, kPi});
  REQUIRE(m.size() == 4);
  CHECK(m[1] == 0.0);
  CHECK(m[2] == 1.0);
}
