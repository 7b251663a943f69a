#include <cmath>

#include <doctest.h>

#include "stark/impurity.hpp"
#include "stark/oracle.hpp"

using namespace stark;

namespace {
const ModelParams& defaults() {
  static const ModelParams p = ModelParams::create(1.0 / (2.0 * kPi), 1.0);
  return p;
}
const ImpurityParams kImp{0.3, 0.1};

LatticeFieldVector field_u() {
  LatticeFieldVector u;
  u.set_uniform(0, Polynomial({1.0, 0.3}));
  u.set_uniform(1, Polynomial({0.5, Complex{0.0, 0.2}}));
  return u;
}
LatticeFieldVector field_v() {
  LatticeFieldVector v;
  v.set_uniform(0, Polynomial({0.7}));
  v.set_uniform(-1, Polynomial({0.0, 0.4}));
  return v;
}
}  // namespace

TEST_CASE("impurity parameter validation") {
  CHECK_THROWS_AS(ImpurityParams::create(0.3, -0.1), DomainError);
  CHECK_THROWS_AS(ImpurityParams::create(std::nan(""), 0.1), DomainError);
  CHECK_NOTHROW(ImpurityParams::create(0.3, 0.0));
}

TEST_CASE("g_d is the shifted discrete resolvent at the impurity site") {
  const ModelParams& p = defaults();
  const Complex z{0.8, 0.25};
  CHECK(std::abs(g_discrete(z, p, kImp) - discrete_resolvent_entry(0, 0, z - kImp.mu, p)) < 1e-14);
  // Herglotz: Im g_d has the sign of Im z.
  CHECK(g_discrete(Complex{0.2, 1e-6}, p, kImp).imag() > 0.0);
  CHECK(g_discrete(Complex{0.2, -1e-6}, p, kImp).imag() < 0.0);
  const PoleSplit s = g_discrete_split(z, 1, p, kImp);
  CHECK(std::abs(s.value(p.level(1) + kImp.mu - z) - g_discrete(z, p, kImp)) < 1e-14);
  CHECK(nearest_pole(Complex{1.25, 0.1}, p, kImp) == 1);
  CHECK(nearest_pole(Complex{1.85, 0.1}, p, kImp) == 2);
}

TEST_CASE("g_c is the field resolvent form of chi_hat") {
  const ModelParams& p = defaults();
  const AnalyticVector chi = channel_chi_hat();
  for (Complex z : {Complex{0.1, 0.3}, Complex{-2.2, -0.05}}) {
    CHECK(std::abs(g_continuum(z, p) - resolvent_form(chi, chi, z, p)) < 1e-13);
  }
  CHECK_THROWS_AS(g_continuum(Complex{0.3, 0.0}, p), ContinuousSpectrumError);
}

TEST_CASE("Krein determinant") {
  const ModelParams& p = defaults();
  const Complex z{0.45, 0.2};
  const auto q = krein_q(z, p, kImp);
  const Complex expected =
      1.0 - kImp.beta * kImp.beta * g_continuum(z, p) * g_discrete(z, p, kImp);
  CHECK(std::abs(q.value - expected) < 1e-14);
  CHECK(q.truncation_order == p.cutoff());
  const ImpurityParams free{0.3, 0.0};
  CHECK(std::abs(krein_q(z, p, free).value - 1.0) < 1e-15);
  const int k = nearest_pole(z, p, kImp);
  CHECK(std::abs(krein_factored(z, k, p, kImp, Branch::physical()) -
                 (p.level(k) + kImp.mu - z) * q.value) < 1e-14);
}

TEST_CASE("blocks at beta = 0 are block diagonal") {
  const ModelParams& p = defaults();
  const ImpurityParams free{0.3, 0.0};
  const SiteVector u2{{{0, 1.0}, {1, 0.5}}};
  const SiteVector v2{{{0, 1.0}}};
  const Complex z{0.9, 0.4};
  const BlockForms b = resolvent_blocks(field_u(), u2, field_v(), v2, z, p, free);
  CHECK(std::abs(b.r12) == 0.0);
  CHECK(std::abs(b.r21) == 0.0);
  CHECK(std::abs(b.r11 - resolvent_form(field_u(), field_v(), z, p)) < 1e-14);
  CHECK(std::abs(b.r22 - discrete_resolvent_form(u2, v2, z - free.mu, p)) < 1e-14);
}

TEST_CASE("blocks solve the Lippmann-Schwinger equations") {
  const ModelParams& p = defaults();
  const AnalyticVector chi = channel_chi_hat();
  const LatticeFieldVector u = field_u();
  const LatticeFieldVector v = field_v();
  for (Complex z : {Complex{0.3, 0.1}, Complex{-1.6, -0.4}, Complex{0.31, 1e-4}}) {
    const Complex r11 = r11_form(u, v, z, p, kImp);
    const Complex lhs = r11 - kImp.beta * kImp.beta * g_discrete(z, p, kImp) *
                                  r11_form(u, chi, z, p, kImp) * resolvent_form(chi, v, z, p);
    CHECK(std::abs(lhs - resolvent_form(u, v, z, p)) <= 1e-9 * (1.0 + std::abs(r11)));
  }
}

TEST_CASE("blocks against the extended oracle") {
  const ModelParams& p = defaults();
  const SiteVector u2{{{0, 1.0}, {2, Complex{0.0, 0.4}}}};
  const SiteVector v2{{{0, 0.5}, {-1, 0.3}}};
  for (Complex z : {Complex{0.2, 0.4}, Complex{1.3, -0.3}}) {
    const BlockForms closed = resolvent_blocks(field_u(), u2, field_v(), v2, z, p, kImp);
    const ExtendedOracle oracle(40, YRule::composite(8, 16), z, p, kImp);
    const BlockForms dense = oracle.blocks(field_u(), u2, field_v(), v2);
    CHECK(std::abs(closed.r11 - dense.r11) < 1e-10);
    CHECK(std::abs(closed.r12 - dense.r12) < 1e-10);
    CHECK(std::abs(closed.r21 - dense.r21) < 1e-10);
    CHECK(std::abs(closed.r22 - dense.r22) < 1e-10);
    CHECK(std::abs(r22_entry(1, 0, z, p, kImp) - oracle.r22(1, 0)) < 1e-10);
    CHECK(std::abs(r12_form(u2, field_v(), z, p, kImp) - closed.r12) < 1e-14);
    CHECK(std::abs(r21_form(field_u(), v2, z, p, kImp) - closed.r21) < 1e-14);
  }
}

TEST_CASE("the impurity pole cancels at lambda_m + mu") {
  const ModelParams& p = defaults();
  // z = lambda_1 + mu itself is admissible.
  const Complex z0{p.level(1) + kImp.mu, 0.0};
  CHECK(std::isfinite(std::abs(r22_entry(0, 0, z0 + Complex{0.0, 1e-9}, p, kImp))));
  for (int m : {-1, 1}) {
    const auto rep = pole_cancellation_check(m, p, kImp);
    CHECK(rep.bounded);
    for (double r : rep.ratios) CHECK(r <= 2.0);
  }
  const auto control = pole_cancellation_check(0, p, ImpurityParams{0.3, 0.0});
  for (double r : control.ratios) CHECK(r == doctest::Approx(10.0).epsilon(0.05));
}
