#pragma once

// Scalar special functions and complex-branch primitives shared by every
// other part of the library.

#include <memory>
#include <span>
#include <vector>

#include "stark/errors.hpp"

namespace stark {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr int kDefaultOrderMax = 512;
inline constexpr double kDefaultTailTol = 1e-14;

/// J_order(arg) for integer order. Miller backward recurrence normalized by the
/// completeness sum J_0^2 + 2 sum J_k^2 = 1; power series for |arg| < 1.
double bessel_j(int order, double arg, int order_max = kDefaultOrderMax);

/// J_0(arg) ... J_nmax(arg) from a single backward sweep.
std::vector<double> bessel_sequence(double arg, int nmax);

/// Table of J_k(theta) for a fixed argument together with the adaptive
/// truncation order used by every Bessel-indexed series.
class BesselTable {
 public:
  BesselTable(double theta, int extent, double tail_tol);

  double theta() const noexcept { return theta_; }
  /// Smallest P > |theta| with |J_P| (1 + |J_P|) < tail_tol.
  int cutoff() const noexcept { return cutoff_; }
  double tail_tol() const noexcept { return tail_tol_; }
  /// Upper bound on sum_{|p| > cutoff} J_p^2.
  double tail_bound() const noexcept { return tail_bound_; }

  /// J_k(theta) for any integer k; orders beyond the table fall back to bessel_j.
  double operator()(int k) const;
  double squared(int k) const {
    const double v = (*this)(k);
    return v * v;
  }

 private:
  double theta_;
  double tail_tol_;
  int cutoff_ = 0;
  double tail_bound_ = 0.0;
  std::vector<double> values_;  // J_0 .. J_extent
};

enum class ThetaSign { automatic, positive, negative };

/// Lattice parameter a (intersite distance 2 pi a), field strength epsilon and
/// the derived scalars. Immutable; copies share the Bessel table.
class ModelParams {
 public:
  /// Builds the parameter set. With ThetaSign::automatic the sign of theta is
  /// fixed by resolve_theta_sign.
  static ModelParams create(double a, double epsilon,
                            ThetaSign sign = ThetaSign::automatic,
                            double tail_tol = kDefaultTailTol);

  double a() const noexcept { return a_; }
  double epsilon() const noexcept { return epsilon_; }
  double theta() const noexcept { return theta_; }
  /// Level spacing 2 pi epsilon a.
  double spacing() const noexcept { return spacing_; }
  /// pi epsilon a.
  double band_halfwidth() const noexcept { return band_halfwidth_; }
  /// epsilon a, the slope of the field term in y.
  double field_scale() const noexcept { return epsilon_ * a_; }
  /// Hopping amplitude 1 / (2 pi a)^2.
  double hopping() const noexcept { return hopping_; }

  double level(int m) const noexcept { return spacing_ * m; }
  double band_lo(int p) const noexcept { return band_halfwidth_ * (2 * p - 1); }
  double band_hi(int p) const noexcept { return band_halfwidth_ * (2 * p + 1); }

  const BesselTable& bessel() const noexcept { return *bessel_; }
  double J(int k) const { return (*bessel_)(k); }
  int cutoff() const noexcept { return bessel_->cutoff(); }

  /// Window half-width for eigenvector evaluation: max(40, |theta| + 30).
  int eigen_window() const noexcept;

 private:
  ModelParams() = default;

  double a_ = 0.0;
  double epsilon_ = 0.0;
  double theta_ = 0.0;
  double spacing_ = 0.0;
  double band_halfwidth_ = 0.0;
  double hopping_ = 0.0;
  std::shared_ptr<const BesselTable> bessel_;
};

/// |theta| = (4 pi^3 a^3 epsilon)^-1.
double theta_magnitude(double a, double epsilon);

/// Residual || (H_d - lambda_m) J^(m) || over sites |n - m| <= window, for the
/// given signed Bessel argument.
double eigen_residual(double a, double epsilon, double theta, int m, int window);

/// Sign s in {+1, -1} such that theta = s |theta| makes J_{n-m}(theta) an
/// eigenvector of H_d with eigenvalue 2 pi epsilon a m. Throws
/// ModelInconsistencyError unless exactly one sign passes.
int resolve_theta_sign(double a, double epsilon, int window = 40);

/// M(lambda) = floor(lambda / spacing + 1/2).
int mode_index(double lambda, const ModelParams& params);

/// ln((lambda_p^+ - z) / (lambda_p^- - z)), principal branch; the cut is the
/// closed band [lambda_p^-, lambda_p^+].
Complex band_log(int p, Complex z, const ModelParams& params);

/// Which analytic branch of a band-cut function is evaluated.
enum class Sheet {
  physical,    // the resolvent sheet, cut along the whole real axis
  from_above,  // continued from Im z > 0 into the lower half of strip S_m
  from_below,  // continued from Im z < 0 into the upper half of strip S_m
};

struct Branch {
  Sheet sheet = Sheet::physical;
  int strip = 0;

  static Branch physical() { return {}; }
  static Branch from_above(int m) { return {Sheet::from_above, m}; }
  static Branch from_below(int m) { return {Sheet::from_below, m}; }
};

/// Additive constant (0 or +-2 pi i) that the continued branch adds to the
/// principal logarithm of band p at z. Real z inside the band of the strip
/// yields the boundary value from the originating side.
Complex branch_log_shift(int p, Complex z, const Branch& branch);

/// band_log on an arbitrary branch. Physical sheet: throws on the cut.
Complex band_log_on(int p, Complex z, const ModelParams& params, const Branch& branch);

/// Throws StripError unless z lies in the open strip of a continued branch,
/// at least edge_exclusion away from both edges. No-op for the physical sheet.
void check_in_strip(Complex z, const ModelParams& params, const Branch& branch,
                    double edge_exclusion = 1e-6);

/// Moments I_j(sigma) = int_{-1}^{1} t^j / (t - sigma) dt, j = 0..degree, on
/// the principal branch (cut [-1, 1]). Forward recurrence near the interval,
/// Laurent series in 1/sigma far from it.
std::vector<Complex> cauchy_moments(Complex sigma, int degree);

/// Gauss-Legendre rule on [-1, 1].
class GaussLegendreRule {
 public:
  explicit GaussLegendreRule(int n);
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  template <typename F>
  auto integrate(F&& f, double lo, double hi) const {
    const double c = 0.5 * (lo + hi);
    const double w = 0.5 * (hi - lo);
    decltype(f(c)) sum{};
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(c + w * nodes_[i]);
    return sum * w;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace stark
