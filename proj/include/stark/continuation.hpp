#pragma once

// Meromorphic continuation across the band (lambda_m^-, lambda_m^+) inside a
// strip S_m: Cauchy forms, resolvent forms, Krein determinant and tau(z).

#include "stark/impurity.hpp"

namespace stark {

struct Strip {
  int m = 0;
  double lower = 0.0;  // lambda_m^-
  double upper = 0.0;  // lambda_m^+

  static Strip of(int m, const ModelParams& params);
  bool contains(Complex z, double edge_exclusion = 1e-6) const;
  double center() const { return 0.5 * (lower + upper); }
};

enum class Direction {
  from_above,  // continued from Im z > 0 into the lower half-strip
  from_below,  // continued from Im z < 0 into the upper half-strip
};
const char* to_string(Direction d);
Branch branch_of(int m, Direction d);

struct ContinuedValue {
  Complex z;
  Strip strip;
  Direction direction = Direction::from_above;
  Complex value;
};

/// phi_m^{n n'}(z) = int h(y) / (lambda_m + epsilon a y - z) dy with the
/// density h(y) = (u1(y))_{n'} conj((v1(y))_n), in closed form.
Complex cauchy_form(int m, int n, int np, Complex z, const AnalyticVector& u1,
                    const AnalyticVector& v1, const ModelParams& params);

/// phi_m^{n n'} continued through the band of strip m.
ContinuedValue continued_cauchy_form(int m, int n, int np, Complex z, Direction direction,
                                     const AnalyticVector& u1, const AnalyticVector& v1,
                                     const ModelParams& params);

/// (2 pi i / epsilon a) h((z - lambda_m) / epsilon a) for h = (u1)_{n'} conj((v1)_n):
/// the jump of the Cauchy form across the band, by direct evaluation of h.
Complex cauchy_jump(int m, int n, int np, Complex z, const AnalyticVector& u1,
                    const AnalyticVector& v1, const ModelParams& params);

/// <R(z) u1, v1> continued through the band of strip m.
Complex continued_resolvent_form(int m, Complex z, Direction direction, const AnalyticVector& u1,
                                 const AnalyticVector& v1, const ModelParams& params);

/// (2 pi i / epsilon a) sum_{n n'} J_{n-m} J_{n'-m} h_{n n'}(s), s = (z - lambda_m) / epsilon a:
/// the jump of the resolvent form across the band of strip m.
Complex resolvent_jump(int m, Complex z, const AnalyticVector& u1, const AnalyticVector& v1,
                       const ModelParams& params);

/// Q_m^- (from above) or Q_m^+ (from below).
KreinEvaluation continued_krein(int m, Complex z, Direction direction, const ModelParams& params,
                                const ImpurityParams& imp);

/// (2 pi i beta^2 / epsilon a) J_m^2 g_d(z): the jump of Q across the band.
Complex krein_jump(int m, Complex z, const ModelParams& params, const ImpurityParams& imp);

/// All four blocks with the field forms on the given branch.
BlockForms blocks_on(const ExtendedVector& u, const ExtendedVector& v, Complex z,
                     const ModelParams& params, const ImpurityParams& imp, const Branch& branch);

/// tau(z) = <R_B(z) u, v> on the physical sheet.
Complex tau_form(Complex z, const ExtendedVector& u, const ExtendedVector& v,
                 const ModelParams& params, const ImpurityParams& imp);

/// tau continued through the band of strip m.
Complex continued_tau(int m, Complex z, Direction direction, const ExtendedVector& u,
                      const ExtendedVector& v, const ModelParams& params,
                      const ImpurityParams& imp);

}  // namespace stark
