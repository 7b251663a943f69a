#include "stark/resonances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace stark {

namespace {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string format_complex(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

// sum_p J_p^2 ln|(lambda_p^+ - x) / (lambda_p^- - x)| for real x off the band edges.
double real_log_sum(double x, const ModelParams& params) {
  const int P = params.cutoff();
  double sum = 0.0;
  for (int p = -P; p <= P; ++p) {
    sum += params.bessel().squared(p) *
           std::log(std::abs((params.band_hi(p) - x) / (params.band_lo(p) - x)));
  }
  return sum;
}

Resonance newton(int m, int k, Complex z, const ModelParams& params, const ImpurityParams& imp,
                 const NewtonOptions& options) {
  const Branch branch = Branch::from_above(m);
  const Strip strip = Strip::of(m, params);
  const double h = options.step_scale * params.spacing();
  auto D = [&](Complex w) { return krein_factored(w, k, params, imp, branch); };
  std::vector<Complex> trace{z};
  auto escaped = [&](Complex w) { return !strip.contains(w) || !(w.imag() < 0.0); };
  if (escaped(z)) throw StripEscapeError("seed outside the lower half-strip", trace);

  auto converged = [&](int it, double q) {
    Resonance r;
    r.m = m;
    r.pole_index = k;
    r.location = z;
    r.krein_abs = q;
    r.iterations = it;
    return r;
  };
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double q = std::abs(krein_on(z, params, imp, branch).value);
  for (int it = 0; it < options.max_iterations; ++it) {
    if (q <= options.krein_tol) return converged(it, q);
    const Complex f = D(z);
    const Complex df = (D(z + h) - D(z - h)) / (2.0 * h);
    if (df == Complex{}) throw ConvergenceError("vanishing derivative in Newton step", trace);
    const Complex step = f / df;
    if (std::abs(step) <= 4.0 * eps * std::abs(z)) {
      // Stagnated at the resolution of z. Near the pole Q = D / zeta amplifies
      // the rounding of z by 1 / |zeta|; accept |Q| up to that floor.
      const double zeta = std::abs(params.level(k) + imp.mu - z);
      const double floor = 4.0 * eps * std::abs(z) * std::abs(df) / zeta;
      if (q <= floor) return converged(it, q);
      throw ConvergenceError("Newton stagnated in strip " + std::to_string(m) + " with |Q| = " +
                                 format_real(q) + " above the rounding floor " + format_real(floor),
                             trace);
    }
    z -= step;
    trace.push_back(z);
    if (escaped(z)) {
      throw StripEscapeError("Newton iterate left the lower half-strip of S_" +
                                 std::to_string(m) + " at " + format_complex(z),
                             trace);
    }
    q = std::abs(krein_on(z, params, imp, branch).value);
  }
  if (q <= options.krein_tol) return converged(options.max_iterations, q);
  throw ConvergenceError("Newton did not reach |Q| <= tol in strip " + std::to_string(m) +
                             " (last |Q| = " + format_real(q) + ")",
                         trace);
}

}  // namespace

Resonance mirror(const Resonance& r) {
  Resonance out = r;
  out.location = std::conj(r.location);
  out.seed = std::conj(r.seed);
  out.direction = r.direction == Direction::from_above ? Direction::from_below
                                                       : Direction::from_above;
  return out;
}

void check_mu(const ModelParams& params, const ImpurityParams& imp) {
  const double x = imp.mu / params.spacing();
  const double frac = x - std::floor(x);
  if (std::abs(frac - 0.5) <= 1e-3) {
    throw DegenerateMuError("mu = " + std::to_string(imp.mu) +
                            " is aligned with a band edge (mu / spacing = n + 1/2 within 1e-3)");
  }
}

int resonant_mode(int m, const ModelParams& params, const ImpurityParams& imp) {
  check_mu(params, imp);
  return mode_index(params.level(m) - imp.mu, params);
}

Complex dispersion_lhs(Complex z, int m, const ModelParams& params, const ImpurityParams& imp) {
  const int P = params.cutoff();
  const Branch lower_limit = Branch::from_below(m);
  Complex logs{};
  for (int p = -P; p <= P; ++p) {
    const Complex l = z.imag() > 0.0 ? band_log(p, z, params) : band_log_on(p, z, params, lower_limit);
    logs += params.bessel().squared(p) * l;
  }
  logs += Complex{0.0, 2.0 * kPi} * params.bessel().squared(m);
  return imp.beta * imp.beta / params.field_scale() * g_discrete(z, params, imp) * logs;
}

Complex perturbative_resonance(int m, const ModelParams& params, const ImpurityParams& imp) {
  const int k = resonant_mode(m, params, imp);
  const double x = params.level(k) + imp.mu;
  const double c = imp.beta * imp.beta / params.field_scale() * params.bessel().squared(k);
  const double re = x - c * real_log_sum(x, params);
  const double im = -3.0 * kPi * c * params.bessel().squared(m);
  return {re, im};
}

Complex perturbative_resonance_complex_log(int m, const ModelParams& params,
                                           const ImpurityParams& imp) {
  const int k = resonant_mode(m, params, imp);
  const double x = params.level(k) + imp.mu;
  const int P = params.cutoff();
  Complex sum{};
  for (int p = -P; p <= P; ++p) {
    const double ratio = (params.band_hi(p) - x) / (params.band_lo(p) - x);
    sum += params.bessel().squared(p) * std::log(Complex{ratio, 0.0});
  }
  sum += Complex{0.0, 2.0 * kPi} * params.bessel().squared(m);
  return x - imp.beta * imp.beta / params.field_scale() * params.bessel().squared(k) * sum;
}

Complex first_order_resonance(int m, const ModelParams& params, const ImpurityParams& imp) {
  const int k = resonant_mode(m, params, imp);
  const double x = params.level(k) + imp.mu;
  const double c = imp.beta * imp.beta / params.field_scale() * params.bessel().squared(k);
  return {x - c * real_log_sum(x, params), -kPi * c * params.bessel().squared(m)};
}

Resonance find_resonance(int m, const ModelParams& params, const ImpurityParams& imp,
                         std::optional<Complex> seed, const NewtonOptions& options) {
  const int k = resonant_mode(m, params, imp);
  const Complex published = perturbative_resonance(m, params, imp);
  Complex start = seed.value_or(published);

  if (!seed && imp.beta > options.beta_switch) {
    // Predictor-corrector in beta, linear in beta^2 from the beta = 0 root.
    const int steps = static_cast<int>(std::ceil(imp.beta / options.beta_step));
    double prev_b2 = 0.0;
    Complex prev_z = params.level(k) + imp.mu;
    ImpurityParams stage = imp;
    stage.beta = imp.beta / steps;
    Complex z = newton(m, k, perturbative_resonance(m, params, stage), params, stage, options)
                    .location;
    double b2 = stage.beta * stage.beta;
    for (int j = 2; j <= steps; ++j) {
      stage.beta = imp.beta * j / steps;
      const double next_b2 = stage.beta * stage.beta;
      const Complex predicted = z + (z - prev_z) * ((next_b2 - b2) / (b2 - prev_b2));
      prev_z = z;
      prev_b2 = b2;
      b2 = next_b2;
      z = newton(m, k, predicted, params, stage, options).location;
    }
    start = z;
  }

  Resonance r = newton(m, k, start, params, imp, options);
  r.seed = published;
  r.order_gap = std::abs(r.location - published);
  r.residual = std::abs(dispersion_lhs(r.location, m, params, imp) - 1.0);
  r.direction = Direction::from_above;
  return r;
}

std::vector<LadderEntry> resonance_ladder(int m_lo, int m_hi, const ModelParams& params,
                                          const ImpurityParams& imp,
                                          const NewtonOptions& options) {
  std::vector<LadderEntry> out;
  for (int m = m_lo; m <= m_hi; ++m) {
    LadderEntry e;
    e.m = m;
    try {
      e.resonance = find_resonance(m, params, imp, std::nullopt, options);
    } catch (const Error& err) {
      e.error = err.what();
    }
    out.push_back(std::move(e));
  }
  // Failed strips sort at their strip center.
  auto key = [&](const LadderEntry& e) {
    return e.resonance ? e.resonance->location.real() : params.level(e.m);
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const LadderEntry& a, const LadderEntry& b) { return key(a) < key(b); });
  return out;
}

Rectangle lower_half_strip_rectangle(int m, const ModelParams& params, double depth) {
  const double inset = 1e-3 * params.spacing();
  return {params.band_lo(m) + inset, params.band_hi(m) - inset, -depth * params.spacing(),
          -1e-6 * params.spacing()};
}

WindingResult krein_winding(int m, Direction direction, const Rectangle& rect,
                            const ModelParams& params, const ImpurityParams& imp) {
  const Branch branch = branch_of(m, direction);
  const int k = nearest_pole(Complex{0.5 * (rect.re_lo + rect.re_hi), 0.0}, params, imp);
  WindingResult res;
  res.min_abs = std::numeric_limits<double>::infinity();
  // Q = D / zeta; both phases are tracked so that a pole of Q close to the
  // contour cannot hide a full turn inside one step.
  struct Sample {
    Complex z, d, zeta;
  };
  auto sample = [&](Complex z) {
    Sample s{z, krein_factored(z, k, params, imp, branch), params.level(k) + imp.mu - z};
    res.min_abs = std::min(res.min_abs, std::abs(s.d / s.zeta));
    ++res.samples;
    return s;
  };
  const Complex corners[5] = {{rect.re_lo, rect.im_lo}, {rect.re_hi, rect.im_lo},
                              {rect.re_hi, rect.im_hi}, {rect.re_lo, rect.im_hi},
                              {rect.re_lo, rect.im_lo}};
  double phase = 0.0;
  const int base = 256;
  for (int e = 0; e < 4; ++e) {
    const Complex a = corners[e];
    const Complex b = corners[e + 1];
    Sample left = sample(a);
    for (int i = 1; i <= base; ++i) {
      const Sample right = sample(a + (b - a) * (static_cast<double>(i) / base));
      struct Seg {
        Sample lo, hi;
        int depth;
      };
      std::vector<Seg> stack{{left, right, 0}};
      while (!stack.empty()) {
        const Seg s = stack.back();
        stack.pop_back();
        const double dd = std::arg(s.hi.d / s.lo.d);
        const double dz = std::arg(s.hi.zeta / s.lo.zeta);
        if ((std::abs(dd) < kPi / 4 && std::abs(dz) < kPi / 4) || s.depth >= 60) {
          phase += dd - dz;
          continue;
        }
        const Sample mid = sample(0.5 * (s.lo.z + s.hi.z));
        stack.push_back({mid, s.hi, s.depth + 1});
        stack.push_back({s.lo, mid, s.depth + 1});
      }
      left = right;
    }
  }
  res.raw = phase / (2.0 * kPi);
  res.winding = static_cast<int>(std::lround(res.raw));
  return res;
}

}  // namespace stark
