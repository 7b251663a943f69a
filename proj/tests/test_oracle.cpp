#include <cmath>

#include <doctest.h>

#include "stark/oracle.hpp"

using namespace stark;

namespace {
const ModelParams& defaults() {
  static const ModelParams p = ModelParams::create(1.0 / (2.0 * kPi), 1.0);
  return p;
}
}  // namespace

TEST_CASE("truncated hamiltonian structure") {
  const Eigen::MatrixXd h = truncated_hamiltonian(10, 0.5, defaults());
  CHECK(h.rows() == 21);
  CHECK((h - h.transpose()).norm() == 0.0);
  CHECK(h(10, 10) == doctest::Approx(defaults().field_scale() * 0.5));
  CHECK(h(10, 11) == doctest::Approx(-defaults().hopping()));
  CHECK(h(10, 12) == 0.0);
}

TEST_CASE("oracle resolvent converges in N and is Hermitian") {
  const ModelParams& p = defaults();
  const Complex z{0.4, 0.2};
  const Complex a = oracle_resolvent_entry(100, 3, -2, 0.7, z, p);
  const Complex b = oracle_resolvent_entry(200, 3, -2, 0.7, z, p);
  CHECK(std::abs(a - b) < 1e-12);
  CHECK(std::abs(oracle_resolvent_entry(100, 3, -2, 0.7, std::conj(z), p) -
                 std::conj(oracle_resolvent_entry(100, -2, 3, 0.7, z, p))) < 1e-14);
  CHECK(std::abs(b - full_resolvent_entry(3, -2, 0.7, z, p)) < 1e-12);
  CHECK_THROWS_AS(oracle_resolvent_entry(10, 11, 0, 0.0, z, p), DomainError);
}

TEST_CASE("dense ladder reproduces the Stark levels in the bulk") {
  const ModelParams& p = defaults();
  const EigenLadder l = oracle_eigen(100, p);
  for (int m = -25; m <= 25; ++m) {
    const int i = l.closest(p.level(m));
    CHECK(std::abs(l.values(i) - p.level(m)) < 1e-8);
    if (m < 25) CHECK(l.values(l.closest(p.level(m + 1))) - l.values(i) == doctest::Approx(1.0));
  }
}

TEST_CASE("extended oracle at beta = 0 is block diagonal") {
  const ModelParams& p = defaults();
  const ImpurityParams free{0.3, 0.0};
  const Complex z{0.2, 0.3};
  const ExtendedOracle o(30, YRule::composite(4, 16), z, p, free);
  LatticeFieldVector u = LatticeFieldVector::unit_constant(0);
  const SiteVector c{{{0, 1.0}}};
  const BlockForms b = o.blocks(u, c, u, c);
  CHECK(std::abs(b.r12) < 1e-15);
  CHECK(std::abs(b.r21) < 1e-15);
  CHECK(std::abs(b.r22 - discrete_resolvent_entry(0, 0, z - free.mu, p)) < 1e-12);
  CHECK(std::abs(b.r11 - resolvent_form(u, u, z, p)) < 1e-10);
}

TEST_CASE("y rule integrates polynomials on (-pi, pi)") {
  const YRule r = YRule::composite(3, 8);
  double s0 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    s0 += r.weights[i];
    s2 += r.weights[i] * r.nodes[i] * r.nodes[i];
  }
  CHECK(s0 == doctest::Approx(2.0 * kPi));
  CHECK(s2 == doctest::Approx(2.0 * kPi * kPi * kPi / 3.0));
}
