#pragma once

// Resonances: zeros of the continued Krein determinant in the half-strips.

#include <optional>
#include <string>
#include <vector>

#include "stark/continuation.hpp"

namespace stark {

struct Resonance {
  int m = 0;           // strip index
  int pole_index = 0;  // m' = M(lambda_m - mu)
  Complex location;
  Direction direction = Direction::from_above;
  double residual = 0.0;   // |dispersion_lhs - 1|
  double krein_abs = 0.0;  // |continued Q| at the root
  Complex seed;
  double order_gap = 0.0;  // |location - perturbative_resonance|
  int iterations = 0;
};

/// The conjugate root on the from-below branch.
Resonance mirror(const Resonance& r);

/// Throws DegenerateMuError when mu is within 1e-3 spacing of a band-edge offset
/// (mu = (n + 1/2) * spacing).
void check_mu(const ModelParams& params, const ImpurityParams& imp);

/// m' = M(lambda_m - mu), after the degeneracy guard.
int resonant_mode(int m, const ModelParams& params, const ImpurityParams& imp);

/// (beta^2 / epsilon a) g_d(z) (sum_p J_p^2 Log((lambda_p^+ - z) / (lambda_p^- - z)) + 2 pi i J_m^2)
/// with principal logarithms; for real z on the band the lower boundary value
/// is used, so the value is continuous on the closed lower half-strip.
Complex dispersion_lhs(Complex z, int m, const ModelParams& params, const ImpurityParams& imp);

/// Published weak-coupling formula: real logarithms and imaginary part
/// -3 pi (beta^2 / epsilon a) J_m'^2 J_m^2.
Complex perturbative_resonance(int m, const ModelParams& params, const ImpurityParams& imp);

/// The same prediction from the intermediate complex-logarithm form, where the
/// p = m term's principal logarithm carries +i pi before the extra 2 pi i J_m^2.
Complex perturbative_resonance_complex_log(int m, const ModelParams& params,
                                           const ImpurityParams& imp);

/// First-order root of the continued determinant: imaginary part
/// -pi (beta^2 / epsilon a) J_m'^2 J_m^2, the golden-rule width.
Complex first_order_resonance(int m, const ModelParams& params, const ImpurityParams& imp);

struct NewtonOptions {
  double krein_tol = 1e-12;
  int max_iterations = 50;
  double step_scale = 1e-7;   // central-difference step, in units of the spacing
  double beta_switch = 0.15;  // continuation in beta above this coupling
  double beta_step = 0.05;
};

/// Newton iteration on the pole-factored continued determinant inside the
/// lower half-strip of S_m. Default seed: perturbative_resonance. Stops at
/// |Q| <= krein_tol, or when the step falls below the resolution of z and |Q|
/// is within the rounding floor that resolution implies; krein_abs reports
/// the value reached either way.
Resonance find_resonance(int m, const ModelParams& params, const ImpurityParams& imp,
                         std::optional<Complex> seed = std::nullopt,
                         const NewtonOptions& options = {});

struct LadderEntry {
  int m = 0;
  std::optional<Resonance> resonance;
  std::string error;
};

/// One search per strip in [m_lo, m_hi]; failures are recorded, not thrown.
/// Found entries are sorted by real part.
std::vector<LadderEntry> resonance_ladder(int m_lo, int m_hi, const ModelParams& params,
                                          const ImpurityParams& imp,
                                          const NewtonOptions& options = {});

struct Rectangle {
  double re_lo = 0.0;
  double re_hi = 0.0;
  double im_lo = 0.0;
  double im_hi = 0.0;

  bool contains(Complex z) const {
    return z.real() > re_lo && z.real() < re_hi && z.imag() > im_lo && z.imag() < im_hi;
  }
};

/// Lower half-strip of S_m inset by 1e-3 spacing from the band edges, from
/// Im z = -depth * spacing up to Im z = -1e-6 spacing.
Rectangle lower_half_strip_rectangle(int m, const ModelParams& params, double depth = 1.0);

struct WindingResult {
  int winding = 0;
  double raw = 0.0;      // accumulated phase / 2 pi
  double min_abs = 0.0;  // min |Q| over the contour samples
  int samples = 0;
};

/// Winding number of the continued determinant around the rectangle, with
/// adaptive subdivision keeping each phase increment below pi / 4.
WindingResult krein_winding(int m, Direction direction, const Rectangle& rect,
                            const ModelParams& params, const ImpurityParams& imp);

/// Location of a single simple pole of f inside the circle |z - center| = radius
/// from the ratio of trapezoidal contour moments, oint z f / oint f.
template <typename F>
Complex contour_pole(F&& f, Complex center, double radius, int nodes = 128) {
  Complex m0{}, m1{};
  for (int k = 0; k < nodes; ++k) {
    const Complex e = std::polar(1.0, 2.0 * kPi * (k + 0.5) / nodes);
    const Complex z = center + radius * e;
    const Complex w = f(z) * e;  // dz is proportional to e
    m0 += w;
    m1 += (z - center) * w;
  }
  return center + m1 / m0;
}

}  // namespace stark
