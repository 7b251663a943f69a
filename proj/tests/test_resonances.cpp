#include <cmath>

#include <doctest.h>

#include "stark/resonances.hpp"

using namespace stark;

namespace {
const ModelParams& defaults() {
  static const ModelParams p = ModelParams::create(1.0 / (2.0 * kPi), 1.0);
  return p;
}
const ImpurityParams kImp{0.3, 0.1};
}  // namespace

TEST_CASE("roots agree with an independent arbitrary-precision computation") {
  // Roots of the continued determinant computed separately with mpmath.
  const ModelParams& p = defaults();
  const struct {
    int m;
    Complex z;
  } ref[] = {
      {-3, {-2.700571, -5.61e-5}}, {-2, {-1.704732, -0.003156}}, {-1, {-0.694924, -0.022542}},
      {0, {0.299127, -0.000494}},  {1, {1.309673, -0.022718}},   {2, {2.304498, -0.003179}},
      {3, {3.300410, -5.57e-5}},
  };
  for (const auto& r : ref) {
    const Resonance res = find_resonance(r.m, p, kImp);
    CHECK(std::abs(res.location.real() - r.z.real()) < 1e-6);
    CHECK(std::abs(res.location.imag() - r.z.imag()) < 1e-6);
    CHECK(res.krein_abs <= 1e-12);
    CHECK(res.residual <= 1e-10);
    CHECK(res.location.imag() < 0.0);
    CHECK(res.pole_index == resonant_mode(r.m, p, kImp));
    CHECK(std::abs(continued_krein(r.m, res.location, res.direction, p, kImp).value) <= 1e-12);
  }
}

TEST_CASE("published and first-order predictions") {
  const ModelParams& p = defaults();
  for (int m = -3; m <= 3; ++m) {
    const Complex pub = perturbative_resonance(m, p, kImp);
    const Complex first = first_order_resonance(m, p, kImp);
    CHECK(pub.real() == doctest::Approx(first.real()).epsilon(1e-15));
    CHECK(pub.imag() == doctest::Approx(3.0 * first.imag()).epsilon(1e-13));
    CHECK(std::abs(perturbative_resonance_complex_log(m, p, kImp) - pub) < 1e-14);
    const int k = resonant_mode(m, p, kImp);
    const double width = kPi * kImp.beta * kImp.beta / p.field_scale() * p.bessel().squared(k) *
                         p.bessel().squared(m);
    CHECK(first.imag() == doctest::Approx(-width).epsilon(1e-13));
  }
}

TEST_CASE("dispersion relation equals 1 - Q on the lower half-strip") {
  const ModelParams& p = defaults();
  for (int m : {-1, 0, 2}) {
    const Complex z{p.level(m) + 0.1, -0.03};
    const Complex q = continued_krein(m, z, Direction::from_above, p, kImp).value;
    CHECK(std::abs(dispersion_lhs(z, m, p, kImp) - (1.0 - q)) < 1e-12);
  }
}

TEST_CASE("degenerate mu is rejected") {
  const ModelParams& p = defaults();
  CHECK_THROWS_AS(check_mu(p, ImpurityParams{0.5, 0.1}), DegenerateMuError);
  CHECK_THROWS_AS(check_mu(p, ImpurityParams{-1.5005, 0.1}), DegenerateMuError);
  CHECK_NOTHROW(check_mu(p, ImpurityParams{0.502, 0.1}));
  CHECK_THROWS_AS(find_resonance(0, p, ImpurityParams{0.5, 0.1}), DegenerateMuError);
}

TEST_CASE("Newton reports failures instead of wandering") {
  const ModelParams& p = defaults();
  CHECK_THROWS_AS(find_resonance(0, p, kImp, Complex{0.7, -0.1}), StripEscapeError);
  NewtonOptions one;
  one.max_iterations = 1;
  CHECK_THROWS_AS(find_resonance(-1, p, kImp, Complex{-0.8, -0.2}, one), ConvergenceError);
}

TEST_CASE("stronger coupling is reached by continuation in beta") {
  const ModelParams& p = defaults();
  const Resonance r = find_resonance(1, p, ImpurityParams{0.3, 0.3});
  CHECK(r.krein_abs <= 1e-12);
  CHECK(r.location.imag() < 0.0);
}

TEST_CASE("mirror root lies on the from-below branch") {
  const ModelParams& p = defaults();
  const Resonance r = find_resonance(1, p, kImp);
  const Resonance s = mirror(r);
  CHECK(s.direction == Direction::from_below);
  CHECK(s.location == std::conj(r.location));
  CHECK(std::abs(continued_krein(1, s.location, Direction::from_below, p, kImp).value) < 1e-12);
}

TEST_CASE("ladder is sorted and complete") {
  const ModelParams& p = defaults();
  const auto ladder = resonance_ladder(-3, 3, p, kImp);
  REQUIRE(ladder.size() == 7);
  for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
    REQUIRE(ladder[i].resonance);
    CHECK(ladder[i].resonance->location.real() < ladder[i + 1].resonance->location.real());
  }
}

TEST_CASE("argument principle counts one root per lower half-strip") {
  const ModelParams& p = defaults();
  for (int m = -2; m <= 2; ++m) {
    const WindingResult w =
        krein_winding(m, Direction::from_above, lower_half_strip_rectangle(m, p), p, kImp);
    CHECK(w.winding == 1);
    CHECK(std::abs(w.raw - 1.0) < 1e-6);
  }
}

TEST_CASE("contour moments locate a simple pole") {
  const Complex a{0.3, -0.02};
  const Complex located =
      contour_pole([&](Complex z) { return 2.0 / (z - a) + z * z; }, Complex{0.31, -0.015}, 0.05);
  CHECK(std::abs(located - a) < 1e-13);
}
