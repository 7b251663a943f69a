#include "stark/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stark {

namespace {

// J_n(x) by the power series, n >= 0.
double series_j(int n, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= h / k;
  double sum = term;
  const double h2 = h * h;
  for (int k = 1; k < 200; ++k) {
    term *= -h2 / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// J_0 .. J_nmax for x > 0 by backward recurrence.
std::vector<double> miller_sequence(double x, int nmax) {
  const int top = std::max(nmax, static_cast<int>(x));
  int start = top + 20 + static_cast<int>(std::sqrt(60.0 * (top + 1)));
  start += start % 2;
  std::vector<double> j(start + 2, 0.0);
  j[start] = 1.0;
  constexpr double kBig = 1e250;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = (2.0 * k / x) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > kBig) {
      for (int i = k - 1; i <= start; ++i) j[i] /= kBig;
    }
  }
  double peak = 0.0;
  for (double v : j) peak = std::max(peak, std::abs(v));
  double norm = 0.0;
  double even = j[0] / peak;
  for (int k = 0; k <= start; ++k) {
    const double v = j[k] / peak;
    norm += (k == 0 ? 1.0 : 2.0) * v * v;
    if (k > 0 && k % 2 == 0) even += 2.0 * v;
  }
  const double scale = (even < 0 ? -1.0 : 1.0) / (peak * std::sqrt(norm));
  std::vector<double> out(nmax + 1);
  for (int k = 0; k <= nmax; ++k) out[k] = j[k] * scale;
  return out;
}

// ln((hi - z) / (lo - z)) with the cut on [lo, hi]; accurate when the ratio is
// close to one.
Complex log_ratio(Complex lo_minus_z, Complex hi_minus_z) {
  const Complex w = (hi_minus_z - lo_minus_z) / lo_minus_z;
  if (std::abs(w) < 0.5) {
    const double re = 0.5 * std::log1p(2.0 * w.real() + std::norm(w));
    const double im = std::atan2(w.imag(), 1.0 + w.real());
    return {re, im};
  }
  return std::log(hi_minus_z / lo_minus_z);
}

double even_moment(int i) { return (i % 2 == 0) ? 2.0 / (i + 1) : 0.0; }

}  // namespace

double bessel_j(int order, double arg, int order_max) {
  if (std::abs(order) > order_max) {
    throw DomainError("bessel_j: |order| " + std::to_string(order) + " exceeds order_max " +
                      std::to_string(order_max));
  }
  if (!std::isfinite(arg)) throw DomainError("bessel_j: non-finite argument");
  double sign = 1.0;
  int n = order;
  if (n < 0) {
    n = -n;
    if (n % 2) sign = -sign;
  }
  double x = arg;
  if (x < 0) {
    x = -x;
    if (n % 2) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < 1.0) return sign * series_j(n, x);
  return sign * miller_sequence(x, n)[n];
}

std::vector<double> bessel_sequence(double arg, int nmax) {
  if (nmax < 0) throw DomainError("bessel_sequence: negative nmax");
  if (!std::isfinite(arg)) throw DomainError("bessel_sequence: non-finite argument");
  const double x = std::abs(arg);
  std::vector<double> out;
  if (x == 0.0) {
    out.assign(nmax + 1, 0.0);
    out[0] = 1.0;
  } else if (x < 1.0) {
    out.resize(nmax + 1);
    for (int k = 0; k <= nmax; ++k) out[k] = series_j(k, x);
  } else {
    out = miller_sequence(x, nmax);
  }
  if (arg < 0) {
    for (int k = 1; k <= nmax; k += 2) out[k] = -out[k];
  }
  return out;
}

BesselTable::BesselTable(double theta, int extent, double tail_tol)
    : theta_(theta), tail_tol_(tail_tol) {
  if (!(tail_tol > 0.0)) throw DomainError("BesselTable: tail_tol must be positive");
  const int first = static_cast<int>(std::floor(std::abs(theta))) + 1;
  for (;;) {
    values_ = bessel_sequence(theta, extent);
    cutoff_ = -1;
    for (int p = first; p <= extent; ++p) {
      const double v = std::abs(values_[p]);
      if (v * (1.0 + v) < tail_tol) {
        cutoff_ = p;
        break;
      }
    }
    if (cutoff_ > 0 && extent >= cutoff_ + 16) break;
    extent *= 2;
  }
  tail_bound_ = 0.0;
  for (int p = cutoff_ + 1; p < static_cast<int>(values_.size()); ++p) {
    tail_bound_ += 2.0 * values_[p] * values_[p];
  }
}

double BesselTable::operator()(int k) const {
  const int n = std::abs(k);
  double v;
  if (n < static_cast<int>(values_.size())) {
    v = values_[n];
  } else if (n > kDefaultOrderMax) {
    // Far beyond the turning point; below the smallest subnormal.
    return 0.0;
  } else {
    v = bessel_j(n, theta_);
  }
  return (k < 0 && (n % 2)) ? -v : v;
}

double theta_magnitude(double a, double epsilon) {
  return 1.0 / (4.0 * kPi * kPi * kPi * a * a * a * epsilon);
}

double eigen_residual(double a, double epsilon, double theta, int m, int window) {
  const double t = 1.0 / ((2.0 * kPi * a) * (2.0 * kPi * a));
  const double spacing = 2.0 * kPi * epsilon * a;
  const auto seq = bessel_sequence(theta, window + 1);
  auto f = [&](int k) {
    const int n = std::abs(k);
    return (k < 0 && (n % 2)) ? -seq[n] : seq[n];
  };
  double sum = 0.0;
  for (int k = -window; k <= window; ++k) {
    const int n = m + k;
    const double r = -t * (f(k - 1) + f(k + 1)) + spacing * (n - m) * f(k);
    sum += r * r;
  }
  return std::sqrt(sum);
}

int resolve_theta_sign(double a, double epsilon, int window) {
  constexpr double kAccept = 1e-10;
  const double mag = theta_magnitude(a, epsilon);
  const bool plus = eigen_residual(a, epsilon, mag, 0, window) < kAccept;
  const bool minus = eigen_residual(a, epsilon, -mag, 0, window) < kAccept;
  if (plus == minus) {
    throw ModelInconsistencyError(
        plus ? "resolve_theta_sign: both signs satisfy the eigen-equation"
             : "resolve_theta_sign: neither sign satisfies the eigen-equation");
  }
  return plus ? +1 : -1;
}

ModelParams ModelParams::create(double a, double epsilon, ThetaSign sign, double tail_tol) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("ModelParams: a must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("ModelParams: epsilon must be positive");
  }
  ModelParams p;
  p.a_ = a;
  p.epsilon_ = epsilon;
  p.band_halfwidth_ = kPi * epsilon * a;
  p.spacing_ = 2.0 * p.band_halfwidth_;
  p.hopping_ = 1.0 / ((2.0 * kPi * a) * (2.0 * kPi * a));
  const double mag = theta_magnitude(a, epsilon);
  const int window = std::max(40, static_cast<int>(std::ceil(mag)) + 30);
  int s = 1;
  switch (sign) {
    case ThetaSign::automatic: s = resolve_theta_sign(a, epsilon, window); break;
    case ThetaSign::positive: s = 1; break;
    case ThetaSign::negative: s = -1; break;
  }
  p.theta_ = s * mag;
  p.bessel_ = std::make_shared<const BesselTable>(p.theta_, window + 80, tail_tol);
  return p;
}

int ModelParams::eigen_window() const noexcept {
  return std::max(40, static_cast<int>(std::ceil(std::abs(theta_))) + 30);
}

int mode_index(double lambda, const ModelParams& params) {
  return static_cast<int>(std::floor(lambda / params.spacing() + 0.5));
}

Complex band_log(int p, Complex z, const ModelParams& params) {
  const double lo = params.band_lo(p);
  const double hi = params.band_hi(p);
  if (z.imag() == 0.0 && z.real() >= lo && z.real() <= hi) {
    throw BranchError("band_log: z = " + std::to_string(z.real()) + " lies on the cut of band " +
                      std::to_string(p));
  }
  return log_ratio(lo - z, hi - z);
}

Complex branch_log_shift(int p, Complex z, const Branch& branch) {
  if (branch.sheet == Sheet::physical || p != branch.strip) return {};
  const Complex two_pi_i{0.0, 2.0 * kPi};
  if (branch.sheet == Sheet::from_above) return z.imag() < 0 ? two_pi_i : Complex{};
  return z.imag() > 0 ? -two_pi_i : Complex{};
}

Complex band_log_on(int p, Complex z, const ModelParams& params, const Branch& branch) {
  if (branch.sheet == Sheet::physical || p != branch.strip) return band_log(p, z, params);
  const double lo = params.band_lo(p);
  const double hi = params.band_hi(p);
  if (z.imag() == 0.0 && z.real() > lo && z.real() < hi) {
    const double re = std::log((hi - z.real()) / (z.real() - lo));
    return {re, branch.sheet == Sheet::from_above ? kPi : -kPi};
  }
  return band_log(p, z, params) + branch_log_shift(p, z, branch);
}

void check_in_strip(Complex z, const ModelParams& params, const Branch& branch,
                    double edge_exclusion) {
  if (branch.sheet == Sheet::physical) return;
  const double lo = params.band_lo(branch.strip);
  const double hi = params.band_hi(branch.strip);
  if (!(z.real() > lo + edge_exclusion && z.real() < hi - edge_exclusion)) {
    throw StripError("Re z = " + std::to_string(z.real()) + " outside strip " +
                     std::to_string(branch.strip) + " (" + std::to_string(lo) + ", " +
                     std::to_string(hi) + ")");
  }
}

std::vector<Complex> cauchy_moments(Complex sigma, int degree) {
  std::vector<Complex> out(degree + 1);
  if (std::abs(sigma) > 1.5) {
    const Complex inv = 1.0 / sigma;
    for (int j = 0; j <= degree; ++j) {
      Complex pw = inv;
      Complex sum{};
      for (int k = 0; k < 2000; ++k) {
        const double mom = even_moment(j + k);
        if (mom != 0.0) {
          const Complex term = pw * mom;
          sum += term;
          if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
        }
        pw *= inv;
        if (pw == Complex{}) break;
      }
      out[j] = -sum;
    }
    return out;
  }
  if (sigma.imag() == 0.0 && std::abs(sigma.real()) <= 1.0) {
    throw BranchError("cauchy_moments: sigma on the cut [-1, 1]");
  }
  out[0] = log_ratio(-1.0 - sigma, 1.0 - sigma);
  for (int j = 0; j < degree; ++j) out[j + 1] = even_moment(j) + sigma * out[j];
  return out;
}

GaussLegendreRule::GaussLegendreRule(int n) : nodes_(n), weights_(n) {
  if (n < 1) throw DomainError("GaussLegendreRule: n must be positive");
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
}

}  // namespace stark
