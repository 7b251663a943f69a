#include <cmath>

#include <doctest.h>

#include "stark/continuation.hpp"

using namespace stark;

namespace {
const ModelParams& defaults() {
  static const ModelParams p = ModelParams::create(1.0 / (2.0 * kPi), 1.0);
  return p;
}
const ImpurityParams kImp{0.3, 0.1};

AnalyticVector vec_u() {
  AnalyticVector u;
  u.set(0, Polynomial({1.0, 0.3}));
  u.set(1, Polynomial({0.5, 0.0, Complex{0.0, -0.2}}));
  return u;
}
AnalyticVector vec_v() {
  AnalyticVector v;
  v.set(0, Polynomial::constant(1.0));
  v.set(-1, Polynomial({0.0, 0.4}));
  return v;
}
}  // namespace

TEST_CASE("strips and branches") {
  const ModelParams& p = defaults();
  const Strip s = Strip::of(2, p);
  CHECK(s.lower == doctest::Approx(1.5));
  CHECK(s.upper == doctest::Approx(2.5));
  CHECK(s.contains(Complex{2.0, -3.0}));
  CHECK_FALSE(s.contains(Complex{2.5, -0.1}));
  CHECK(branch_of(2, Direction::from_above).sheet == Sheet::from_above);
  CHECK(branch_of(2, Direction::from_below).strip == 2);
  CHECK_THROWS_AS(continued_krein(0, Complex{1.2, -0.1}, Direction::from_above, p, kImp),
                  StripError);
}

TEST_CASE("Cauchy form equals quadrature off the axis") {
  const ModelParams& p = defaults();
  const GaussLegendreRule rule(40);
  const Complex z{0.2, 0.3};
  Complex ref{};
  for (int k = 0; k < 16; ++k) {
    const double lo = -kPi + 2.0 * kPi * k / 16;
    ref += rule.integrate(
        [&](double y) {
          const Complex h = vec_u().sites().at(1)(y) * std::conj(vec_v().sites().at(0)(y));
          return h / (p.level(0) + p.field_scale() * y - z);
        },
        lo, lo + 2.0 * kPi / 16);
  }
  CHECK(std::abs(cauchy_form(0, 0, 1, z, vec_u(), vec_v(), p) - ref) < 1e-12);
}

TEST_CASE("continued functions are continuous across the band") {
  const ModelParams& p = defaults();
  for (int m = -3; m <= 3; ++m) {
    const double x = p.level(m) + 0.17;
    for (double d : {1e-4, 1e-5, 1e-6}) {
      const Complex up{x, d};
      const Complex dn{x, -d};
      const auto qa = continued_krein(m, dn, Direction::from_above, p, kImp).value;
      CHECK(std::abs(qa - krein_q(up, p, kImp).value) <= 1e3 * d);
      const auto qb = continued_krein(m, up, Direction::from_below, p, kImp).value;
      CHECK(std::abs(qb - krein_q(dn, p, kImp).value) <= 1e3 * d);
      const Complex ra = continued_resolvent_form(m, dn, Direction::from_above, vec_u(), vec_v(), p);
      CHECK(std::abs(ra - resolvent_form(vec_u(), vec_v(), up, p)) <= 1e3 * d);
      const Complex ca =
          continued_cauchy_form(m, -1, 1, dn, Direction::from_above, vec_u(), vec_v(), p).value;
      CHECK(std::abs(ca - cauchy_form(m, -1, 1, up, vec_u(), vec_v(), p)) <= 1e3 * d);
    }
  }
}

TEST_CASE("the continuation differs from the physical sheet by the jump") {
  const ModelParams& p = defaults();
  for (int m : {-2, 0, 3}) {
    const Complex z{p.level(m) - 0.2, -0.05};
    const Complex dq =
        continued_krein(m, z, Direction::from_above, p, kImp).value - krein_q(z, p, kImp).value;
    CHECK(std::abs(dq + krein_jump(m, z, p, kImp)) < 1e-14);
    const Complex dr = continued_resolvent_form(m, z, Direction::from_above, vec_u(), vec_v(), p) -
                       resolvent_form(vec_u(), vec_v(), z, p);
    CHECK(std::abs(dr - resolvent_jump(m, z, vec_u(), vec_v(), p)) < 1e-13);
    const Complex dc =
        continued_cauchy_form(m, 0, 0, z, Direction::from_above, vec_u(), vec_v(), p).value -
        cauchy_form(m, 0, 0, z, vec_u(), vec_v(), p);
    CHECK(std::abs(dc - cauchy_jump(m, 0, 0, z, vec_u(), vec_v(), p)) < 1e-13);
    const Complex w = std::conj(z);
    const Complex db = continued_resolvent_form(m, w, Direction::from_below, vec_u(), vec_v(), p) -
                       resolvent_form(vec_u(), vec_v(), w, p);
    CHECK(std::abs(db + resolvent_jump(m, w, vec_u(), vec_v(), p)) < 1e-13);
  }
}

TEST_CASE("Sokhotski-Plemelj: the physical boundary values differ by the density") {
  const ModelParams& p = defaults();
  const int m = 1;
  const double x = p.level(m) + 0.3;
  const double d = 1e-9;
  const Complex above = cauchy_form(m, 0, 0, Complex{x, d}, vec_u(), vec_v(), p);
  const Complex below = cauchy_form(m, 0, 0, Complex{x, -d}, vec_u(), vec_v(), p);
  CHECK(std::abs((above - below) - cauchy_jump(m, 0, 0, Complex{x, 0.0}, vec_u(), vec_v(), p)) <
        1e-6);
}

TEST_CASE("tau is the sum of the blocks and symmetric") {
  const ModelParams& p = defaults();
  ExtendedVector u{vec_u(), SiteVector{{{0, 1.0}}}};
  ExtendedVector v{vec_v(), SiteVector{{{1, Complex{0.0, 1.0}}}}};
  const Complex z{0.6, 0.2};
  const Complex t = tau_form(z, u, v, p, kImp);
  CHECK(std::abs(t - std::conj(tau_form(std::conj(z), v, u, p, kImp))) < 1e-13);
  CHECK(std::abs(continued_tau(1, Complex{0.6, 0.2}, Direction::from_above, u, v, p, kImp) - t) <
        1e-13);
}
