#pragma once

// Perturbed operator H_B = H + V on the extended space H + l2: one impurity
// channel attached at site 0 with coupling beta and internal level mu.

#include <vector>

#include "stark/numerics.hpp"
#include "stark/unperturbed.hpp"
#include "stark/vectors.hpp"

namespace stark {

struct ImpurityParams {
  double mu = 0.0;
  double beta = 0.0;

  /// Throws DomainError unless beta >= 0 and both values are finite.
  static ImpurityParams create(double mu, double beta);
};

/// chi = e_0 in l2(Z).
SiteVector channel_chi();
/// chi * 1(y); squared norm 2 pi.
AnalyticVector channel_chi_hat();

struct KreinEvaluation {
  Complex z;
  Complex value;
  Branch branch;
  int truncation_order = 0;
  double tail_bound = 0.0;
};

/// Index k of the pole lambda_k + mu nearest to z.
int nearest_pole(Complex z, const ModelParams& params, const ImpurityParams& imp);

/// g_d(z) = sum_p J_p^2 / (lambda_p - z + mu) = <R_d(z - mu) chi, chi>.
Complex g_discrete(Complex z, const ModelParams& params, const ImpurityParams& imp);

/// g_d split at the pole lambda_k + mu: residue J_k^2 and the regular remainder.
PoleSplit g_discrete_split(Complex z, int k, const ModelParams& params, const ImpurityParams& imp);

/// g_c(z) = (1 / epsilon a) sum_p J_p^2 band_log(p, z) = <R(z) chi_hat, chi_hat>.
/// On a continued branch the strip band uses the continued logarithm.
Complex g_continuum(Complex z, const ModelParams& params, const Branch& branch = Branch::physical());

/// Q(z) = 1 - beta^2 g_c(z) g_d(z) on the physical sheet.
KreinEvaluation krein_q(Complex z, const ModelParams& params, const ImpurityParams& imp);

/// Q on an arbitrary branch; the physical sheet rejects real z.
KreinEvaluation krein_on(Complex z, const ModelParams& params, const ImpurityParams& imp,
                         const Branch& branch);

/// D(z) = (lambda_k + mu - z) Q(z): the determinant with the pole at
/// lambda_k + mu multiplied out, analytic near that point.
Complex krein_factored(Complex z, int k, const ModelParams& params, const ImpurityParams& imp,
                       const Branch& branch);

/// The four field scalars every block form reduces to.
struct FieldForms {
  Complex uv;       // <R u1, v1>
  Complex u_chi;    // <R u1, chi_hat>
  Complex chi_v;    // <R chi_hat, v1>
  Complex chi_chi;  // <R chi_hat, chi_hat> = g_c
};

/// Block forms <R_B11 u1, v1>, <R_B12 u2, v1>, <R_B21 u1, v2>, <R_B22 u2, v2>.
struct BlockForms {
  Complex r11;
  Complex r12;
  Complex r21;
  Complex r22;
  Complex krein;  // Q(z); infinite at lambda_k + mu

  Complex total() const { return r11 + r12 + r21 + r22; }
};

/// Rank-one solution of the Lippmann-Schwinger equations. The nearest pole of
/// R_d(z - mu) is factored out analytically so that the cancellation in every
/// block is exact; z = lambda_k + mu itself is admissible.
BlockForms assemble_blocks(const FieldForms& field, const SiteVector& u2, const SiteVector& v2,
                           Complex z, const ModelParams& params, const ImpurityParams& imp);

/// All four blocks on the physical sheet, Im z != 0.
BlockForms resolvent_blocks(const LatticeFieldVector& u1, const SiteVector& u2,
                            const LatticeFieldVector& v1, const SiteVector& v2, Complex z,
                            const ModelParams& params, const ImpurityParams& imp);

Complex r11_form(const LatticeFieldVector& u1, const LatticeFieldVector& v1, Complex z,
                 const ModelParams& params, const ImpurityParams& imp);
/// (R_B22(z))_{n n'} = <R_B22 e_n', e_n>.
Complex r22_entry(int n, int np, Complex z, const ModelParams& params, const ImpurityParams& imp);
/// <R_B12 u2, v1> = -<R B R_B22 u2, v1>.
Complex r12_form(const SiteVector& u2, const LatticeFieldVector& v1, Complex z,
                 const ModelParams& params, const ImpurityParams& imp);
/// <R_B21 u1, v2> = -<R_d(z - mu) B+ R_B11 u1, v2>.
Complex r21_form(const LatticeFieldVector& u1, const SiteVector& v2, Complex z,
                 const ModelParams& params, const ImpurityParams& imp);

enum class MatrixElement { r11_chi, r12_chi, r21_chi, r22_00 };
const char* to_string(MatrixElement e);

struct PoleCancellationReport {
  int m = 0;
  Complex center;
  MatrixElement element = MatrixElement::r22_00;
  double beta = 0.0;
  std::vector<double> radii;
  std::vector<double> maxima;  // max |element| on each circle
  std::vector<double> ratios;  // maxima[i + 1] / maxima[i]
  bool bounded = false;        // every ratio <= 2
};

/// Samples one matrix element of R_B on circles |z - (lambda_m + mu)| = r,
/// nodes at angles (k + 1/2) 2 pi / nodes so that no node is real.
PoleCancellationReport pole_cancellation_check(int m, const ModelParams& params,
                                               const ImpurityParams& imp,
                                               MatrixElement element = MatrixElement::r22_00,
                                               const std::vector<double>& radii = {1e-2, 1e-3,
                                                                                   1e-4},
                                               int nodes = 64);

}  // namespace stark
