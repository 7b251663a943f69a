#include <cmath>

#include <doctest.h>

#include "stark/errors.hpp"
#include "stark/numerics.hpp"

using namespace stark;

namespace {
const ModelParams& defaults() {
  static const ModelParams p = ModelParams::create(1.0 / (2.0 * kPi), 1.0);
  return p;
}
}  // namespace

TEST_CASE("bessel_j matches the standard library for nonnegative orders") {
  for (double x : {0.1, 1.0, 2.0, 7.5, 30.0}) {
    for (int n = 0; n <= 40; ++n) {
      const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
      CHECK(bessel_j(n, x) == doctest::Approx(ref).epsilon(1e-12).scale(1e-300));
      CHECK(std::abs(bessel_j(n, x) - ref) <= 1e-14);
    }
  }
}

TEST_CASE("bessel_j reflection in order and argument") {
  for (int n = 0; n <= 12; ++n) {
    const double sign = (n % 2) ? -1.0 : 1.0;
    CHECK(bessel_j(-n, 2.0) == doctest::Approx(sign * bessel_j(n, 2.0)).epsilon(1e-15));
    CHECK(bessel_j(n, -2.0) == doctest::Approx(sign * bessel_j(n, 2.0)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(bessel_j(10, std::nan("")), DomainError);
  CHECK_THROWS_AS(bessel_j(kDefaultOrderMax + 1, 1.0), DomainError);
}

TEST_CASE("default parameters") {
  const ModelParams& p = defaults();
  CHECK(theta_magnitude(p.a(), p.epsilon()) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p.theta() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p.spacing() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.band_lo(0) == doctest::Approx(-0.5));
  CHECK(p.band_hi(0) == doctest::Approx(0.5));
  CHECK(p.band_hi(2) == doctest::Approx(p.band_lo(3)));
  CHECK(p.cutoff() == 17);
  CHECK(p.bessel().tail_bound() <= 1e-14);
}

TEST_CASE("only the positive theta sign gives eigenvectors") {
  CHECK(resolve_theta_sign(1.0 / (2.0 * kPi), 1.0) == 1);
  CHECK(eigen_residual(1.0 / (2.0 * kPi), 1.0, 2.0, 0, 40) < 1e-15);
  CHECK(eigen_residual(1.0 / (2.0 * kPi), 1.0, -2.0, 0, 40) > 0.1);
  const ModelParams forced = ModelParams::create(1.0 / (2.0 * kPi), 1.0, ThetaSign::negative);
  CHECK(forced.theta() == doctest::Approx(-2.0));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ModelParams::create(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(ModelParams::create(0.1, -1.0), DomainError);
  CHECK_THROWS_AS(ModelParams::create(0.1, 1.0, ThetaSign::automatic, 0.0), DomainError);
}

TEST_CASE("mode index rounds to the nearest level") {
  const ModelParams& p = defaults();
  CHECK(mode_index(0.0, p) == 0);
  CHECK(mode_index(0.49, p) == 0);
  CHECK(mode_index(0.5, p) == 1);
  CHECK(mode_index(-0.5, p) == 0);
  CHECK(mode_index(-0.51, p) == -1);
  CHECK(mode_index(3.2, p) == 3);
}

TEST_CASE("band_log jumps by 2 pi i across its band and is continuous elsewhere") {
  const ModelParams& p = defaults();
  const double d = 1e-12;
  const Complex above = band_log(0, Complex{0.2, d}, p);
  const Complex below = band_log(0, Complex{0.2, -d}, p);
  CHECK(std::abs((above - below) - Complex{0.0, 2.0 * kPi}) < 1e-9);
  const Complex a2 = band_log(0, Complex{1.7, d}, p);
  const Complex b2 = band_log(0, Complex{1.7, -d}, p);
  CHECK(std::abs(a2 - b2) < 1e-9);
}

TEST_CASE("continued band_log is analytic across the band") {
  const ModelParams& p = defaults();
  // From above into the lower half: the upper boundary value continues.
  const Complex up = band_log(0, Complex{0.1, 1e-9}, p);
  const Complex cont = band_log_on(0, Complex{0.1, -1e-9}, p, Branch::from_above(0));
  CHECK(std::abs(up - cont) < 1e-7);
  const Complex down = band_log(0, Complex{0.1, -1e-9}, p);
  const Complex cont2 = band_log_on(0, Complex{0.1, 1e-9}, p, Branch::from_below(0));
  CHECK(std::abs(down - cont2) < 1e-7);
  CHECK_THROWS(check_in_strip(Complex{1.2, -0.1}, p, Branch::from_above(0)));
}

TEST_CASE("Cauchy moments against Gauss-Legendre quadrature") {
  const GaussLegendreRule rule(20);
  auto composite = [&](auto&& f) {
    Complex sum{};
    for (int k = 0; k < 40; ++k) sum += rule.integrate(f, -1.0 + k / 20.0, -1.0 + (k + 1) / 20.0);
    return sum;
  };
  for (Complex sigma : {Complex{0.3, 0.4}, Complex{2.5, -0.1}, Complex{-0.9, 0.05}}) {
    const auto mom = cauchy_moments(sigma, 5);
    for (int j = 0; j <= 5; ++j) {
      const Complex ref = composite([&](double t) { return Complex{std::pow(t, j)} / (t - sigma); });
      CHECK(std::abs(mom[j] - ref) < 1e-9);
    }
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n - 1 exactly") {
  const GaussLegendreRule rule(8);
  for (int k = 0; k <= 15; ++k) {
    const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
    CHECK(rule.integrate([&](double t) { return std::pow(t, k); }, -1.0, 1.0) ==
          doctest::Approx(exact).epsilon(1e-14).scale(1.0));
  }
}
