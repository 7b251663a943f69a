#include "cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "stark/friedrichs.hpp"
#include "stark/oracle.hpp"

namespace stark::cli {

namespace {

Check at_most(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, fmt::format("<= {:.3g}", tol),
          std::move(detail)};
}

Check within(std::string name, double measured, double lo, double hi, bool pass,
             std::string detail = {}) {
  return {std::move(name), pass, measured, fmt::format("in [{:.3g}, {:.3g}]", lo, hi),
          std::move(detail)};
}

std::string sci(const std::vector<double>& xs) { return fmt::format("{:.3e}", fmt::join(xs, ", ")); }

Complex random_complex(Rng& rng) { return {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}; }

Polynomial random_polynomial(Rng& rng, int max_degree) {
  const int degree = rng.integer(0, max_degree);
  std::vector<Complex> c;
  for (int j = 0; j <= degree; ++j) c.push_back(random_complex(rng));
  return Polynomial(c);
}

ExtendedVector random_extended(Rng& rng) {
  ExtendedVector v;
  for (int k = 0; k < 2; ++k) v.field.set(rng.integer(-2, 2), random_polynomial(rng, 2));
  for (int k = 0; k < 2; ++k) v.channel.values[rng.integer(-2, 2)] = random_complex(rng);
  return v;
}

// Fixed smooth test vectors for the form identities.
AnalyticVector test_u1() {
  AnalyticVector u;
  u.set(0, Polynomial({1.0, 0.3}));
  u.set(1, Polynomial({0.5, 0.0, Complex{0.0, -0.2}}));
  return u;
}

AnalyticVector test_v1() {
  AnalyticVector v;
  v.set(0, Polynomial::constant(1.0));
  v.set(-1, Polynomial({0.0, 0.4}));
  return v;
}

SiteVector test_u2() { return SiteVector{{{0, 1.0}, {1, Complex{0.0, 0.5}}}}; }
SiteVector test_v2() { return SiteVector{{{0, 1.0}, {-1, 0.3}}}; }

}  // namespace

std::string format_check(const Check& c) {
  std::string s = fmt::format("{} {} measured={:.6e} {}", c.pass ? "PASS" : "FAIL", c.name,
                              c.measured, c.bound);
  if (!c.detail.empty()) s += " (" + c.detail + ")";
  return s;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<Check> eigen_checks(const ModelParams& params, int m_max, int window,
                                double residual_tol, int N, double ladder_tol) {
  double residual = 0.0;
  for (int m = -m_max; m <= m_max; ++m) {
    residual = std::max(residual, eigenvector_residual(eigenvector(m, params, window), params));
  }
  const EigenLadder ladder = oracle_eigen(N, params);
  const int bulk = N / 4;
  double deviation = 0.0;
  double overlap = 0.0;
  for (int m = -bulk; m <= bulk; ++m) {
    const int idx = ladder.closest(params.level(m));
    deviation = std::max(deviation, std::abs(ladder.values(idx) - params.level(m)));
    double dot = 0.0;
    for (int n = -N; n <= N; ++n) dot += ladder.vectors(n + N, idx) * params.J(n - m);
    overlap = std::max(overlap, 1.0 - std::abs(dot));
  }
  return {
      at_most("eigen.residual", residual, residual_tol,
              fmt::format("|m| <= {}, window |n - m| <= {}, theta = {:.6g}", m_max, window,
                          params.theta())),
      at_most("eigen.ladder", deviation, ladder_tol,
              fmt::format("dense eigenvalues, N = {}, |m| <= {}", N, bulk)),
      at_most("eigen.overlap", overlap, ladder_tol,
              fmt::format("1 - |<v_m, J^(m)>|, N = {}, |m| <= {}", N, bulk)),
  };
}

std::vector<Check> bessel_checks(const ModelParams& params, int m_max, double tol) {
  const int reach = m_max + params.cutoff() + 40;
  double completeness = -1.0;
  for (int p = -reach; p <= reach; ++p) completeness += params.J(p) * params.J(p);
  double orthogonality = 0.0;
  for (int m = -m_max; m <= m_max; ++m) {
    for (int mp = -m_max; mp <= m_max; ++mp) {
      double sum = m == mp ? -1.0 : 0.0;
      for (int p = -reach; p <= reach; ++p) sum += params.J(m - p) * params.J(mp - p);
      orthogonality = std::max(orthogonality, std::abs(sum));
    }
  }
  return {
      at_most("bessel.completeness", std::abs(completeness), tol, "|sum J_p^2 - 1|"),
      at_most("bessel.orthogonality", orthogonality, tol,
              fmt::format("|sum J_(m-p) J_(m'-p) - delta|, |m|, |m'| <= {}", m_max)),
  };
}

std::vector<Check> resolvent_oracle_checks(const ModelParams& params, int N, int samples,
                                           std::uint64_t seed, double tol) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int n = rng.integer(-20, 20);
    const int np = rng.integer(-20, 20);
    const double y = rng.uniform(-kPi, kPi);
    const double re = rng.uniform(-6.0, 6.0);
    const double im = rng.uniform(0.05, 2.0) * (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    const Complex z{re, im};
    worst = std::max(worst, std::abs(full_resolvent_entry(n, np, y, z, params) -
                                     oracle_resolvent_entry(N, n, np, y, z, params)));
  }
  return {at_most("oracle.resolvent", worst, tol,
                  fmt::format("{} random (n, n', y, z), |n|, |n'| <= 20, N = {}", samples, N))};
}

std::vector<Check> spectral_measure_checks(const ModelParams& params, int edge_band_max,
                                           const std::vector<double>& deltas, double slope_tol,
                                           int grid_points, double total_tol) {
  const LatticeFieldVector phi = LatticeFieldVector::unit_constant(0);
  const SpectralMeasure measure(phi, params);

  double slope = 0.0;
  int edges = 0;
  for (int p = -edge_band_max; p <= edge_band_max; ++p) {
    for (double e : {params.band_lo(p), params.band_hi(p)}) {
      if (p > -edge_band_max && e == params.band_lo(p)) continue;  // shared with band p - 1
      ++edges;
      for (double d : deltas) {
        slope = std::max(slope, std::abs(measure.eta(e - d) - measure.eta(e + d)) / d);
      }
    }
  }

  const auto [first, last] = coefficient_range(phi, params);
  const double lo = params.band_lo(first) - params.spacing();
  const double hi = params.band_hi(last) + params.spacing();
  double drop = 0.0;
  double previous = measure.eta(lo);
  for (int i = 1; i < grid_points; ++i) {
    const double value = measure.eta(lo + (hi - lo) * i / (grid_points - 1));
    drop = std::max(drop, previous - value);
    previous = value;
  }
  const double norm2 = phi.norm2();
  const double total = std::abs(measure.eta(hi) - norm2);

  // Quadrature is converged to 1e-12 per evaluation; larger decreases are real.
  constexpr double kMonotoneTol = 1e-12;
  return {
      at_most("spectral.edge-continuity", slope, slope_tol,
              fmt::format("max |eta(e - d) - eta(e + d)| / d over {} edges, d in {{{}}}", edges,
                          sci(deltas))),
      at_most("spectral.monotone", drop, kMonotoneTol,
              fmt::format("largest decrease on {} points in [{:.4g}, {:.4g}]", grid_points, lo, hi)),
      at_most("spectral.total", total, total_tol,
              fmt::format("|eta(+inf) - |Phi|^2|, |Phi|^2 = {:.15g}", norm2)),
  };
}

std::vector<Check> extended_oracle_checks(const ModelParams& params, const ImpurityParams& imp,
                                          int N, double tol) {
  const LatticeFieldVector u1 = test_u1();
  const LatticeFieldVector v1 = test_v1();
  const SiteVector u2 = test_u2();
  const SiteVector v2 = test_v2();
  const YRule rule = YRule::composite(8, 16);
  double worst = 0.0;
  const std::vector<Complex> zs{{0.37, 0.41}, {-1.4, -0.35}, {2.2, 0.3}, {0.3, -0.5}};
  for (const Complex z : zs) {
    const BlockForms closed = resolvent_blocks(u1, u2, v1, v2, z, params, imp);
    const ExtendedOracle oracle(N, rule, z, params, imp);
    const BlockForms dense = oracle.blocks(u1, u2, v1, v2);
    for (const auto& [a, b] : {std::pair{closed.r11, dense.r11}, std::pair{closed.r12, dense.r12},
                               std::pair{closed.r21, dense.r21}, std::pair{closed.r22, dense.r22}}) {
      worst = std::max(worst, std::abs(a - b));
    }
    for (const auto& [n, np] : {std::pair{0, 0}, std::pair{1, -1}, std::pair{2, 3}}) {
      worst = std::max(worst, std::abs(r22_entry(n, np, z, params, imp) - oracle.r22(n, np)));
    }
  }
  return {at_most("oracle.extended-blocks", worst, tol,
                  fmt::format("R_B11, R_B12, R_B21, R_B22 at {} points, N = {}, 8 x 16 y-nodes",
                              zs.size(), N))};
}

std::vector<Check> resolvent_identity_checks(const ModelParams& params, const ImpurityParams& imp,
                                             int samples, std::uint64_t seed, double sym_tol,
                                             double ls_tol) {
  Rng rng(seed);
  const AnalyticVector chi_hat = channel_chi_hat();
  double symmetry = 0.0;
  double herglotz = std::numeric_limits<double>::infinity();
  double ls = 0.0;
  for (int i = 0; i < samples; ++i) {
    const ExtendedVector u = random_extended(rng);
    const ExtendedVector v = random_extended(rng);
    const double im = rng.uniform(0.05, 1.0) * (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    const Complex z{rng.uniform(-3.0, 3.0), im};

    const Complex uv = tau_form(z, u, v, params, imp);
    const Complex vu = tau_form(std::conj(z), v, u, params, imp);
    symmetry = std::max(symmetry, std::abs(uv - std::conj(vu)) / (1.0 + std::abs(uv)));

    const Complex uu = tau_form(z, u, u, params, imp);
    herglotz = std::min(herglotz, uu.imag() / z.imag());

    const Complex r11 = r11_form(u.field, v.field, z, params, imp);
    const Complex r11_chi = r11_form(u.field, chi_hat, z, params, imp);
    const Complex free = resolvent_form(u.field, v.field, z, params);
    const Complex chi_v = resolvent_form(chi_hat, v.field, z, params);
    const Complex gd = g_discrete(z, params, imp);
    const Complex residual = r11 - imp.beta * imp.beta * gd * r11_chi * chi_v - free;
    ls = std::max(ls, std::abs(residual) / (1.0 + std::abs(r11)));
  }
  return {
      at_most("resolvent.symmetry", symmetry, sym_tol,
              fmt::format("|<R_B(z) u, v> - conj <R_B(conj z) v, u>|, {} random samples", samples)),
      {"resolvent.herglotz", herglotz > 0.0, herglotz, "> 0",
       "min Im <R_B(z) u, u> / Im z"},
      at_most("resolvent.lippmann-schwinger", ls, ls_tol,
              "|<R_B11 u, v> - beta^2 g_d <R_B11 u, chi> <R chi, v> - <R u, v>|"),
  };
}

std::vector<Check> pole_cancellation_checks(const ModelParams& params, const ImpurityParams& imp,
                                            const std::vector<int>& strips, double ratio_tol,
                                            const std::vector<double>& radii) {
  std::vector<Check> out;
  const MatrixElement elements[] = {MatrixElement::r11_chi, MatrixElement::r12_chi,
                                    MatrixElement::r21_chi, MatrixElement::r22_00};
  for (int m : strips) {
    double worst = 0.0;
    std::string detail;
    for (MatrixElement e : elements) {
      const auto rep = pole_cancellation_check(m, params, imp, e, radii);
      const double r = *std::max_element(rep.ratios.begin(), rep.ratios.end());
      worst = std::max(worst, r);
      detail += fmt::format("{}{} maxima {{{}}}", detail.empty() ? "" : "; ", to_string(e),
                            sci(rep.maxima));
    }
    out.push_back(at_most(fmt::format("pole-cancellation m={}", m), worst, ratio_tol,
                          fmt::format("largest ratio of circle maxima; {}", detail)));
  }
  ImpurityParams free = imp;
  free.beta = 0.0;
  for (int m : strips) {
    const auto rep = pole_cancellation_check(m, params, free, MatrixElement::r22_00, radii);
    // A simple pole grows by the radius ratio from one circle to the next.
    double worst = 0.0;
    for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
      const double expected = radii[i] / radii[i + 1];
      worst = std::max(worst, std::abs(rep.ratios[i] / expected - 1.0));
    }
    out.push_back(at_most(fmt::format("pole-cancellation.control m={}", m), worst, 0.2,
                          fmt::format("beta = 0, |growth / radius ratio - 1|, maxima {{{}}}",
                                      sci(rep.maxima))));
  }
  return out;
}

std::vector<Check> continuation_checks(const ModelParams& params, const ImpurityParams& imp,
                                       int m_max, const std::vector<double>& deltas,
                                       double slope_tol, double jump_tol) {
  const AnalyticVector u1 = test_u1();
  const AnalyticVector v1 = test_v1();
  const std::pair<int, int> pairs[] = {{0, 0}, {0, 1}, {-1, 0}, {-1, 1}};
  constexpr double kLinearLo = 5.0;
  constexpr double kLinearHi = 20.0;
  constexpr double kNoiseFloor = 1e-13;

  struct Family {
    const char* name;
    double slope = 0.0;
    double ratio_lo = std::numeric_limits<double>::infinity();
    double ratio_hi = 0.0;
  };
  Family families[3] = {{"continuation.cauchy"}, {"continuation.resolvent"}, {"continuation.krein"}};
  double jump = 0.0;

  // mismatch(d) = |continued(x -+ i d) - physical(x +- i d)| for one function.
  auto audit = [&](Family& f, auto&& continued, auto&& physical, double x, Direction dir) {
    const double sign = dir == Direction::from_above ? -1.0 : 1.0;
    std::vector<double> mismatch;
    for (double d : deltas) {
      const double mm = std::abs(continued(Complex{x, sign * d}) - physical(Complex{x, -sign * d}));
      mismatch.push_back(mm);
      f.slope = std::max(f.slope, mm / d);
    }
    for (std::size_t i = 0; i + 1 < mismatch.size(); ++i) {
      if (mismatch[i + 1] < kNoiseFloor) continue;
      const double r = mismatch[i] / mismatch[i + 1] * (deltas[i + 1] / deltas[i]) * 10.0;
      f.ratio_lo = std::min(f.ratio_lo, r);
      f.ratio_hi = std::max(f.ratio_hi, r);
    }
  };

  for (int m = -m_max; m <= m_max; ++m) {
    const Strip strip = Strip::of(m, params);
    const double half = 0.5 * (strip.upper - strip.lower);
    for (double t : {-0.6, 0.15, 0.7}) {
      const double x = strip.center() + t * half;
      for (Direction dir : {Direction::from_above, Direction::from_below}) {
        for (const auto& [n, np] : pairs) {
          audit(
              families[0],
              [&](Complex z) {
                return continued_cauchy_form(m, n, np, z, dir, u1, v1, params).value;
              },
              [&](Complex z) { return cauchy_form(m, n, np, z, u1, v1, params); }, x, dir);
        }
        audit(
            families[1],
            [&](Complex z) { return continued_resolvent_form(m, z, dir, u1, v1, params); },
            [&](Complex z) { return resolvent_form(u1, v1, z, params); }, x, dir);
        audit(
            families[2],
            [&](Complex z) { return continued_krein(m, z, dir, params, imp).value; },
            [&](Complex z) { return krein_q(z, params, imp).value; }, x, dir);

        // Continued minus physical on the same side equals the jump exactly.
        const double sign = dir == Direction::from_above ? 1.0 : -1.0;
        const Complex z{x, -sign * 0.1 * half};
        for (const auto& [n, np] : pairs) {
          const Complex diff = continued_cauchy_form(m, n, np, z, dir, u1, v1, params).value -
                               cauchy_form(m, n, np, z, u1, v1, params);
          const Complex expected = sign * cauchy_jump(m, n, np, z, u1, v1, params);
          jump = std::max(jump, std::abs(diff - expected) / (1.0 + std::abs(expected)));
        }
        {
          const Complex diff = continued_resolvent_form(m, z, dir, u1, v1, params) -
                               resolvent_form(u1, v1, z, params);
          const Complex expected = sign * resolvent_jump(m, z, u1, v1, params);
          jump = std::max(jump, std::abs(diff - expected) / (1.0 + std::abs(expected)));
        }
        {
          const Complex diff =
              continued_krein(m, z, dir, params, imp).value - krein_q(z, params, imp).value;
          const Complex expected = -sign * krein_jump(m, z, params, imp);
          jump = std::max(jump, std::abs(diff - expected) / (1.0 + std::abs(expected)));
        }
      }
    }
  }

  std::vector<Check> out;
  for (const Family& f : families) {
    const bool linear = f.ratio_lo >= kLinearLo && f.ratio_hi <= kLinearHi;
    Check c = at_most(f.name, f.slope, slope_tol,
                      fmt::format("max mismatch / d, |m| <= {}, d in {{{}}}; decade ratios in "
                                  "[{:.3f}, {:.3f}], required in [{:g}, {:g}]",
                                  m_max, sci(deltas), f.ratio_lo, f.ratio_hi, kLinearLo, kLinearHi));
    c.pass = c.pass && linear;
    out.push_back(c);
  }
  out.push_back(at_most("continuation.jumps", jump, jump_tol,
                        "continued - physical = jump for Cauchy, resolvent and Krein forms"));
  return out;
}

std::vector<Check> resonance_checks(const ModelParams& params, const ImpurityParams& imp, int m_lo,
                                    int m_hi, const NewtonOptions& options, double krein_tol,
                                    double dispersion_tol, double pole_tol) {
  const auto ladder = resonance_ladder(m_lo, m_hi, params, imp, options);
  const int expected = m_hi - m_lo + 1;
  int found = 0;
  double krein = 0.0;
  double dispersion = 0.0;
  double top = -std::numeric_limits<double>::infinity();
  double pole = 0.0;
  std::string failures;

  ExtendedVector probe;
  probe.field = channel_chi_hat();
  probe.channel = channel_chi();
  probe.field.set(1, Polynomial({0.5, 0.2}));

  for (const auto& e : ladder) {
    if (!e.resonance) {
      failures += fmt::format(" m={}: {};", e.m, e.error);
      continue;
    }
    const Resonance& r = *e.resonance;
    ++found;
    krein = std::max(krein, r.krein_abs);
    dispersion = std::max(dispersion, r.residual);
    top = std::max(top, r.location.imag());
    const double radius = std::min(0.5 * std::abs(r.location.imag()), 0.05 * params.spacing());
    const Complex located = contour_pole(
        [&](Complex z) { return continued_tau(r.m, z, r.direction, probe, probe, params, imp); },
        r.location, radius);
    pole = std::max(pole, std::abs(located - r.location));
  }
  const std::string range = fmt::format("m in [{}, {}], {} of {} found{}", m_lo, m_hi, found,
                                        expected, failures);
  const bool complete = found == expected;
  std::vector<Check> out{
      at_most("resonance.krein", krein, krein_tol, range),
      at_most("resonance.dispersion", dispersion, dispersion_tol, "|dispersion_lhs - 1|"),
      {"resonance.lower-half", top < 0.0, top, "< 0", "largest Im z"},
      at_most("resonance.tau-pole", pole, pole_tol,
              "|contour-moment pole of continued tau - Newton root|"),
  };
  for (auto& c : out) c.pass = c.pass && complete;
  return out;
}

std::vector<Check> weak_coupling_checks(const ModelParams& params, const ImpurityParams& imp,
                                        int m_lo, int m_hi, WidthFormula formula,
                                        const WeakCouplingOptions& wc,
                                        const NewtonOptions& options) {
  const char* label = formula == WidthFormula::published ? "published" : "first-order";
  const double smallest = wc.betas.back();
  const double scale = std::pow(smallest * smallest / params.field_scale(), 2);
  double ratio_lo = std::numeric_limits<double>::infinity();
  double ratio_hi = 0.0;
  double im_worst = 0.0;
  std::string rows;
  for (int m = m_lo; m <= m_hi; ++m) {
    std::vector<double> gaps;
    double im_gap = 0.0;
    for (double b : wc.betas) {
      ImpurityParams stage = imp;
      stage.beta = b;
      const Resonance r = find_resonance(m, params, stage, std::nullopt, options);
      const Complex predicted = formula == WidthFormula::published
                                    ? perturbative_resonance(m, params, stage)
                                    : first_order_resonance(m, params, stage);
      gaps.push_back(std::abs(r.location - predicted));
      im_gap = std::abs(r.location.imag() - predicted.imag());
    }
    std::vector<double> ratios;
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
      // Normalized to a halving of beta: 16 for an O(beta^4) gap.
      const double r = gaps[i] / gaps[i + 1] * std::pow(2.0 * wc.betas[i + 1] / wc.betas[i], 4);
      ratios.push_back(r);
      ratio_lo = std::min(ratio_lo, r);
      ratio_hi = std::max(ratio_hi, r);
    }
    im_worst = std::max(im_worst, im_gap / scale);
    rows += fmt::format("; m={} ratios {{{:.4f}}}", m, fmt::join(ratios, ", "));
  }
  const bool in_range = ratio_lo >= wc.ratio_lo && ratio_hi <= wc.ratio_hi;
  const double extreme = std::abs(std::log(ratio_lo / 16.0)) > std::abs(std::log(ratio_hi / 16.0))
                             ? ratio_lo
                             : ratio_hi;
  return {
      within(fmt::format("weak-coupling.{}.ratio", label), extreme, wc.ratio_lo, wc.ratio_hi,
             in_range,
             fmt::format("gap(beta_i) / gap(beta_i+1) per halving, betas {{{}}}{}",
                         fmt::join(wc.betas, ", "), rows)),
      at_most(fmt::format("weak-coupling.{}.im", label), im_worst, wc.im_bound,
              fmt::format("|Im z - Im z_pred| / (beta^2 / epsilon a)^2 at beta = {}", smallest)),
  };
}

std::vector<Check> winding_checks(const ModelParams& params, const ImpurityParams& imp, int m_lo,
                                  int m_hi, const NewtonOptions& options) {
  int worst = 0;
  std::string rows;
  for (int m = m_lo; m <= m_hi; ++m) {
    const Rectangle rect = lower_half_strip_rectangle(m, params);
    const WindingResult w = krein_winding(m, Direction::from_above, rect, params, imp);
    int roots = 0;
    try {
      if (rect.contains(find_resonance(m, params, imp, std::nullopt, options).location)) ++roots;
    } catch (const Error&) {
    }
    worst = std::max(worst, std::abs(w.winding - roots));
    rows += fmt::format("{}m={} winding {} (raw {:.6f}) roots {}", rows.empty() ? "" : "; ", m,
                        w.winding, w.raw, roots);
  }
  return {at_most("argument-principle", worst, 0.0, rows)};
}

std::vector<Check> friedrichs_checks(const ModelParams& params, const ImpurityParams& imp,
                                     int samples, std::uint64_t seed, double tol) {
  Rng rng(seed);
  auto random_state = [&] {
    FriedrichsState s;
    for (int k = 0; k < 3; ++k) s.discrete[rng.integer(-3, 3)] = random_complex(rng);
    for (int k = 0; k < 3; ++k) s.packets[rng.integer(-3, 3)] = random_polynomial(rng, 2);
    return s;
  };
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const FriedrichsState psi = random_state();
    const FriedrichsState phi = random_state();
    worst = std::max(worst, friedrichs_form_check(psi, phi, params, imp, tol).discrepancy);
  }

  double constancy = 0.0;
  double jump_error = 0.0;
  double jump_min = std::numeric_limits<double>::infinity();
  const double h = params.band_halfwidth();
  for (int s = -3; s <= 3; ++s) {
    for (int p = -4; p <= 4; ++p) {
      const double base = spectral_density(s, params.level(p), params, imp);
      for (double t : {-0.9, -0.3, 0.2, 0.8}) {
        constancy = std::max(
            constancy, std::abs(spectral_density(s, params.level(p) + t * h, params, imp) - base));
      }
      if (p == 4) continue;
      const double e = params.band_hi(p);
      const double d = 1e-9 * params.spacing();
      const double jump = std::abs(spectral_density(s, e - d, params, imp) -
                                   spectral_density(s, e + d, params, imp));
      const double expected =
          imp.beta * std::abs(params.J(-s)) * std::abs(params.J(-p - 1) - params.J(-p));
      jump_error = std::max(jump_error, std::abs(jump - expected));
      jump_min = std::min(jump_min, jump);
    }
  }
  return {
      at_most("friedrichs.form", worst, tol,
              fmt::format("|direct - expansion| on {} random mixed states", samples)),
      at_most("friedrichs.density-constant", constancy, 0.0, "band-wise deviation of v_s(omega)"),
      {"friedrichs.density-jumps", jump_min > 0.0 && jump_error <= 1e-14, jump_min, "> 0",
       fmt::format("smallest edge jump, |s| <= 3, bands -4..4; max |jump - beta |J_-s| "
                   "|J_-p-1 - J_-p|| = {:.3e}",
                   jump_error)},
  };
}

}  // namespace stark::cli
