#include "stark/unperturbed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stark {

namespace {

// I_j = int_{-1}^{1} t^j / (t - sigma) dt for the full band m on the given
// branch, sigma = (z - lambda_m) / (pi epsilon a).
std::vector<Complex> band_moments(int m, Complex z, int degree, const ModelParams& params,
                                  const Branch& branch) {
  const Complex sigma = (z - params.level(m)) / params.band_halfwidth();
  if (std::abs(sigma) > 1.5) {
    auto out = cauchy_moments(sigma, degree);
    const Complex shift = branch_log_shift(m, z, branch);
    if (shift != Complex{}) {
      Complex pw = 1.0;
      for (auto& v : out) {
        v += shift * pw;
        pw *= sigma;
      }
    }
    return out;
  }
  std::vector<Complex> out(degree + 1);
  out[0] = band_log_on(m, z, params, branch);
  for (int j = 0; j < degree; ++j) {
    const double mom = (j % 2 == 0) ? 2.0 / (j + 1) : 0.0;
    out[j + 1] = mom + sigma * out[j];
  }
  return out;
}

// int_lo^hi h(y) / (y - s) dy with s = (z - lambda_m) / (epsilon a).
Complex piece_cauchy(const Polynomial& h, double lo, double hi, int m, Complex z,
                     const ModelParams& params, const Branch& branch) {
  if (h.is_zero()) return {};
  const double c = 0.5 * (lo + hi);
  const double w = 0.5 * (hi - lo);
  const Polynomial ht = h.rescaled(c, w);
  const bool full = (lo == -kPi && hi == kPi);
  std::vector<Complex> moments;
  if (full) {
    moments = band_moments(m, z, ht.degree(), params, branch);
  } else {
    if (branch.sheet != Sheet::physical) {
      throw DomainError("continued resolvent forms need single-piece analytic profiles");
    }
    const Complex s = (z - params.level(m)) / params.field_scale();
    moments = cauchy_moments((s - c) / w, ht.degree());
  }
  Complex sum{};
  for (int j = 0; j <= ht.degree(); ++j) sum += ht.coeff(j) * moments[j];
  return sum;
}

std::vector<Complex> discrete_coefficients(const SiteVector& u, int first, int last,
                                           const ModelParams& params) {
  std::vector<Complex> d(std::max(0, last - first + 1));
  for (int m = first; m <= last; ++m) {
    Complex acc{};
    for (const auto& [n, val] : u.values) acc += params.J(n - m) * val;
    d[m - first] = acc;
  }
  return d;
}

Complex resolvent_form_impl(const LatticeFieldVector& u, const LatticeFieldVector& v, Complex z,
                            const ModelParams& params, const Branch& branch) {
  if (branch.sheet == Sheet::physical && z.imag() == 0.0) {
    throw ContinuousSpectrumError("resolvent_form: real z lies in the continuous spectrum");
  }
  if (u.sites().empty() || v.sites().empty()) return {};
  const auto breaks = merge_breaks(u.breaks(), v.breaks());
  const auto ru = u.refined(breaks);
  const auto rv = v.refined(breaks);
  const auto [ufirst, ulast] = coefficient_range(ru, params);
  const auto [vfirst, vlast] = coefficient_range(rv, params);
  const int first = std::max(ufirst, vfirst);
  const int last = std::min(ulast, vlast);
  if (first > last) return {};
  const auto cu = projection_coefficients(ru, first, last, params);
  const auto cv = projection_coefficients(rv, first, last, params);
  Complex sum{};
  for (int m = first; m <= last; ++m) {
    for (int k = 0; k + 1 < static_cast<int>(breaks.size()); ++k) {
      const Polynomial h = cu[m - first][k] * cv[m - first][k].conj();
      sum += piece_cauchy(h, breaks[k], breaks[k + 1], m, z, params, branch);
    }
  }
  return sum / params.field_scale();
}

}  // namespace

double StarkEigenvector::at(int n) const {
  if (n < first_site || n > last_site()) return 0.0;
  return components[n - first_site];
}

double StarkEigenvector::norm() const {
  double s = 0.0;
  for (double c : components) s += c * c;
  return std::sqrt(s);
}

StarkEigenvector eigenvector(int m, const ModelParams& params, std::optional<int> window) {
  const int w = window.value_or(params.eigen_window());
  StarkEigenvector v;
  v.m = m;
  v.first_site = m - w;
  v.components.resize(2 * w + 1);
  for (int k = -w; k <= w; ++k) v.components[k + w] = params.J(k);
  return v;
}

double eigenvector_residual(const StarkEigenvector& v, const ModelParams& params) {
  const double t = params.hopping();
  auto comp = [&](int n) { return params.J(n - v.m); };
  double sum = 0.0;
  for (int n = v.first_site; n <= v.last_site(); ++n) {
    const double r =
        -t * (comp(n - 1) + comp(n + 1)) + (params.level(n) - params.level(v.m)) * v.at(n);
    sum += r * r;
  }
  return std::sqrt(sum);
}

GeneralizedEigenfunction eigenfunction(double lambda, const ModelParams& params) {
  GeneralizedEigenfunction f;
  f.lambda = lambda;
  f.m = mode_index(lambda, params);
  double y = (lambda - params.level(f.m)) / params.field_scale();
  if (y >= kPi) y = std::nextafter(kPi, 0.0);
  if (y < -kPi) y = -kPi;
  f.delta_location = y;
  const int w = params.eigen_window();
  f.first_site = f.m - w;
  f.amplitudes.resize(2 * w + 1);
  for (int k = -w; k <= w; ++k) f.amplitudes[k + w] = params.J(k);
  return f;
}

double eigenfunction_residual(const GeneralizedEigenfunction& f, const ModelParams& params) {
  const double t = params.hopping();
  const double field = params.field_scale() * f.delta_location;
  double worst = 0.0;
  const int count = static_cast<int>(f.amplitudes.size());
  for (int i = 1; i + 1 < count; ++i) {
    const int n = f.first_site + i;
    const double applied = -t * (f.amplitudes[i - 1] + f.amplitudes[i + 1]) +
                           (params.level(n) + field) * f.amplitudes[i];
    worst = std::max(worst, std::abs(applied - f.lambda * f.amplitudes[i]));
  }
  return worst;
}

Complex discrete_resolvent_entry(int n, int np, Complex z, const ModelParams& params) {
  const int k = static_cast<int>(std::lround(z.real() / params.spacing()));
  if (std::abs(z - params.level(k)) < 1e-12) {
    throw PoleError("discrete_resolvent_entry: z at the Stark level m = " + std::to_string(k), k);
  }
  const int P = params.cutoff();
  Complex sum{};
  for (int m = std::min(n, np) - P; m <= std::max(n, np) + P; ++m) {
    sum += params.J(n - m) * params.J(np - m) / (params.level(m) - z);
  }
  return sum;
}

Complex full_resolvent_entry(int n, int np, double y, Complex z, const ModelParams& params) {
  if (z.imag() == 0.0) {
    throw ContinuousSpectrumError("full_resolvent_entry: real z lies in the continuous spectrum");
  }
  if (!(y > -kPi && y < kPi)) throw DomainError("full_resolvent_entry: y outside (-pi, pi)");
  return discrete_resolvent_entry(n, np, z - params.field_scale() * y, params);
}

PoleSplit discrete_resolvent_split(const SiteVector& u, const SiteVector& v, Complex z, int k,
                                   const ModelParams& params) {
  PoleSplit out{};
  const auto us = u.support();
  const auto vs = v.support();
  if (!us || !vs) return out;
  const int P = params.cutoff();
  const int first = std::max(us->first, vs->first) - P;
  const int last = std::min(us->second, vs->second) + P;
  const auto du = discrete_coefficients(u, first, last, params);
  const auto dv = discrete_coefficients(v, first, last, params);
  for (int m = first; m <= last; ++m) {
    const Complex w = du[m - first] * std::conj(dv[m - first]);
    if (m == k) {
      out.residue = w;
    } else {
      out.regular += w / (params.level(m) - z);
    }
  }
  if (k < first || k > last) {
    // Pole index outside the coupled range: residue is negligible.
    out.residue = {};
  }
  return out;
}

Complex discrete_resolvent_form(const SiteVector& u, const SiteVector& v, Complex z,
                                const ModelParams& params) {
  const int k = static_cast<int>(std::lround(z.real() / params.spacing()));
  const Complex dist = params.level(k) - z;
  if (std::abs(dist) < 1e-12) {
    throw PoleError("discrete_resolvent_form: z at the Stark level m = " + std::to_string(k), k);
  }
  return discrete_resolvent_split(u, v, z, k, params).value(dist);
}

std::pair<int, int> coefficient_range(const LatticeFieldVector& phi, const ModelParams& params) {
  const auto s = phi.support();
  if (!s) return {0, -1};
  return {s->first - params.cutoff(), s->second + params.cutoff()};
}

std::vector<std::vector<Polynomial>> projection_coefficients(const LatticeFieldVector& phi,
                                                             int first, int last,
                                                             const ModelParams& params) {
  std::vector<std::vector<Polynomial>> out;
  out.reserve(std::max(0, last - first + 1));
  for (int m = first; m <= last; ++m) {
    std::vector<Polynomial> pieces(phi.pieces());
    for (const auto& [n, polys] : phi.sites()) {
      const double j = params.J(n - m);
      if (j == 0.0) continue;
      for (int k = 0; k < phi.pieces(); ++k) pieces[k] += polys[k] * Complex{j};
    }
    out.push_back(std::move(pieces));
  }
  return out;
}

Complex band_cauchy(int m, const Polynomial& h, Complex z, const ModelParams& params,
                    const Branch& branch) {
  return piece_cauchy(h, -kPi, kPi, m, z, params, branch) / params.field_scale();
}

Complex resolvent_form(const LatticeFieldVector& u, const LatticeFieldVector& v, Complex z,
                       const ModelParams& params) {
  return resolvent_form_impl(u, v, z, params, Branch::physical());
}

Complex resolvent_form(const AnalyticVector& u, const AnalyticVector& v, Complex z,
                       const ModelParams& params, const Branch& branch) {
  check_in_strip(z, params, branch);
  return resolvent_form_impl(LatticeFieldVector(u), LatticeFieldVector(v), z, params, branch);
}

LatticeFieldVector apply_hamiltonian(const LatticeFieldVector& phi, const ModelParams& params) {
  LatticeFieldVector out(phi.breaks());
  const auto s = phi.support();
  if (!s) return out;
  const double t = params.hopping();
  const Polynomial field({0.0, params.field_scale()});
  for (int n = s->first - 1; n <= s->second + 1; ++n) {
    const auto left = phi.profile(n - 1);
    const auto mid = phi.profile(n);
    const auto right = phi.profile(n + 1);
    std::vector<Polynomial> pieces(phi.pieces());
    for (int k = 0; k < phi.pieces(); ++k) {
      pieces[k] = (left[k] + right[k]) * Complex{-t} + mid[k] * Complex{params.level(n)} +
                  field * mid[k];
    }
    out.set_profile(n, std::move(pieces));
  }
  return out;
}

SiteVector apply_discrete_hamiltonian(const SiteVector& f, const ModelParams& params) {
  SiteVector out;
  const auto s = f.support();
  if (!s) return out;
  const double t = params.hopping();
  for (int n = s->first - 1; n <= s->second + 1; ++n) {
    const Complex v = -t * (f.at(n - 1) + f.at(n + 1)) + params.level(n) * f.at(n);
    if (v != Complex{}) out.values[n] = v;
  }
  return out;
}

LatticeFieldVector apply_spectral_projection(double lambda, const LatticeFieldVector& phi,
                                             const ModelParams& params) {
  const auto [first, last] = coefficient_range(phi, params);
  const int M = mode_index(lambda, params);
  if (first > last || M < first) return LatticeFieldVector(phi.breaks());
  const int m_end = std::min(M, last);
  double ystar = (lambda - params.level(M)) / params.field_scale();
  std::vector<double> extra;
  if (M <= last && ystar > -kPi && ystar < kPi) extra.push_back(ystar);
  const auto rphi = phi.refined(extra);
  const auto& breaks = rphi.breaks();
  const auto c = projection_coefficients(rphi, first, m_end, params);
  LatticeFieldVector out(breaks);
  const int P = params.cutoff();
  for (int n = first - P; n <= m_end + P; ++n) {
    std::vector<Polynomial> pieces(rphi.pieces());
    for (int m = first; m <= m_end; ++m) {
      const double j = params.J(n - m);
      if (j == 0.0) continue;
      for (int k = 0; k < rphi.pieces(); ++k) {
        // theta(lambda - lambda_m - epsilon a y) = 1 below y*, right-continuous.
        if (m == M && breaks[k] >= ystar) continue;
        pieces[k] += c[m - first][k] * Complex{j};
      }
    }
    out.set_profile(n, std::move(pieces));
  }
  return out;
}

SpectralMeasure::SpectralMeasure(const LatticeFieldVector& phi, const ModelParams& params)
    : params_(params), breaks_(phi.breaks()) {
  for (int n : {64, 128, 256, 512, 1024}) rules_.emplace_back(n);
  const auto [first, last] = coefficient_range(phi, params);
  first_ = first;
  const auto c = projection_coefficients(phi, first, last, params);
  density_.reserve(c.size());
  for (const auto& pieces : c) {
    std::vector<Polynomial> d;
    d.reserve(pieces.size());
    for (const auto& p : pieces) d.push_back(p * p.conj());
    density_.push_back(std::move(d));
  }
  cumulative_.assign(density_.size() + 1, 0.0);
  for (std::size_t i = 0; i < density_.size(); ++i) {
    cumulative_[i + 1] = cumulative_[i] + partial(first_ + static_cast<int>(i), kPi);
  }
  total_ = cumulative_.back();
}

double SpectralMeasure::partial(int band, double y_end) const {
  const auto& d = density_[band - first_];
  double previous = 0.0;
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) {
      const double lo = breaks_[k];
      const double hi = std::min(breaks_[k + 1], y_end);
      if (hi <= lo || d[k].is_zero()) continue;
      sum += rules_[r].integrate([&](double y) { return d[k](y).real(); }, lo, hi);
    }
    if (r > 0 && std::abs(sum - previous) < 1e-12) return sum;
    previous = sum;
  }
  return previous;
}

double SpectralMeasure::eta(double lambda) const {
  const int M = mode_index(lambda, params_);
  const int count = static_cast<int>(density_.size());
  if (count == 0 || M < first_) return 0.0;
  if (M >= first_ + count) return total_;
  double y = (lambda - params_.level(M)) / params_.field_scale();
  y = std::clamp(y, -kPi, kPi);
  return cumulative_[M - first_] + partial(M, y);
}

double spectral_measure_eta(double lambda, const LatticeFieldVector& phi,
                            const ModelParams& params) {
  return SpectralMeasure(phi, params).eta(lambda);
}

}  // namespace stark
