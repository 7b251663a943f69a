#pragma once

// Invariant and oracle checks shared by `stark verify` and the acceptance
// binary. Every check is deterministic for a given seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stark/resonances.hpp"

namespace stark::cli {

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  std::string bound;  // e.g. "<= 1e-10", "in [8, 32]"
  std::string detail;
};

/// "PASS name measured=... bound (detail)".
std::string format_check(const Check& c);

bool all_pass(const std::vector<Check>& checks);

/// Uniform deviates built directly on the engine output, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>((engine_() >> 11) % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Residual of J^(m) for |m| <= m_max over the window, the truncated-matrix
/// ladder for |m| <= N/4 and the eigenvector overlaps.
std::vector<Check> eigen_checks(const ModelParams& params, int m_max, int window,
                                double residual_tol, int N, double ladder_tol);

/// Completeness and shift orthogonality of J_p(theta) for |m|, |m'| <= m_max.
std::vector<Check> bessel_checks(const ModelParams& params, int m_max, double tol);

/// Closed-form fibre resolvent against the dense solve on random samples
/// |n|, |n'| <= 20.
std::vector<Check> resolvent_oracle_checks(const ModelParams& params, int N, int samples,
                                           std::uint64_t seed, double tol);

/// Spectral measure of Phi = 1 at site 0: continuity at the band edges of
/// |m| <= edge_band_max, monotonicity on a grid and the total mass.
std::vector<Check> spectral_measure_checks(const ModelParams& params, int edge_band_max,
                                           const std::vector<double>& deltas, double slope_tol,
                                           int grid_points, double total_tol);

/// The four closed-form blocks against the y-discretized extended operator.
std::vector<Check> extended_oracle_checks(const ModelParams& params, const ImpurityParams& imp,
                                          int N, double tol);

/// Symmetry <R_B(z) u, v> = conj <R_B(conj z) v, u>, the Herglotz sign of
/// Im <R_B(z) u, u> and the Lippmann-Schwinger residual of the first block.
std::vector<Check> resolvent_identity_checks(const ModelParams& params, const ImpurityParams& imp,
                                             int samples, std::uint64_t seed, double sym_tol,
                                             double ls_tol);

/// Bounded circle maxima of every block element around lambda_m + mu, plus
/// the beta = 0 control growing tenfold per decade.
std::vector<Check> pole_cancellation_checks(const ModelParams& params, const ImpurityParams& imp,
                                            const std::vector<int>& strips, double ratio_tol,
                                            const std::vector<double>& radii);

/// Two-sided continuity of the continued Cauchy forms, resolvent forms and
/// Krein determinants across the bands of |m| <= m_max (mismatch <= C delta
/// and linear in delta), and the exact jump identities.
std::vector<Check> continuation_checks(const ModelParams& params, const ImpurityParams& imp,
                                       int m_max, const std::vector<double>& deltas,
                                       double slope_tol, double jump_tol);

/// Newton roots for m_lo..m_hi: |Q| and dispersion residuals, Im z < 0, and
/// the pole of tau located independently by contour moments.
std::vector<Check> resonance_checks(const ModelParams& params, const ImpurityParams& imp, int m_lo,
                                    int m_hi, const NewtonOptions& options, double krein_tol,
                                    double dispersion_tol, double pole_tol);

/// Weak-coupling audit against one width formula.
enum class WidthFormula { published, first_order };
struct WeakCouplingOptions {
  std::vector<double> betas;  // decreasing
  double ratio_lo = 8.0;
  double ratio_hi = 32.0;
  double im_bound = 0.25;  // in units of (beta^2 / epsilon a)^2 at the smallest beta
};
std::vector<Check> weak_coupling_checks(const ModelParams& params, const ImpurityParams& imp,
                                        int m_lo, int m_hi, WidthFormula formula,
                                        const WeakCouplingOptions& wc,
                                        const NewtonOptions& options);

/// Winding number of the continued determinant around each lower half-strip
/// rectangle against the number of roots found inside it.
std::vector<Check> winding_checks(const ModelParams& params, const ImpurityParams& imp, int m_lo,
                                  int m_hi, const NewtonOptions& options);

/// Direct vs Lee-Friedrichs forms on random mixed states, and the band-wise
/// constancy and edge jumps of v_s(omega).
std::vector<Check> friedrichs_checks(const ModelParams& params, const ImpurityParams& imp,
                                     int samples, std::uint64_t seed, double tol);

}  // namespace stark::cli
