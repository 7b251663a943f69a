#pragma once

// Exact spectral data of the unperturbed operator H = H_d x I + I x (epsilon a y):
// Stark eigenvectors, generalized eigenfunctions, resolvent kernels and forms,
// and the spectral family.

#include <optional>
#include <vector>

#include "stark/numerics.hpp"
#include "stark/vectors.hpp"

namespace stark {

/// Eigenvector J^(m) of H_d, components J_{n-m}(theta) on sites |n - m| <= window.
struct StarkEigenvector {
  int m = 0;
  int first_site = 0;
  std::vector<double> components;

  int last_site() const noexcept { return first_site + static_cast<int>(components.size()) - 1; }
  double at(int n) const;
  double norm() const;
};

StarkEigenvector eigenvector(int m, const ModelParams& params, std::optional<int> window = {});

/// || (H_d - lambda_m) J^(m) || over the window (neighbours outside the window
/// are taken from the exact Bessel values).
double eigenvector_residual(const StarkEigenvector& v, const ModelParams& params);

/// Generalized eigenfunction Psi_n(y, lambda) = J_{n-m}(theta) delta(y - y*),
/// stored as (m, y*, amplitudes); the delta normalization is never needed.
struct GeneralizedEigenfunction {
  double lambda = 0.0;
  int m = 0;
  double delta_location = 0.0;  // y* in [-pi, pi)
  int first_site = 0;
  std::vector<double> amplitudes;
};

GeneralizedEigenfunction eigenfunction(double lambda, const ModelParams& params);

/// max_n |((H_d + epsilon a y*) Psi)_n - lambda Psi_n| over the interior of the window.
double eigenfunction_residual(const GeneralizedEigenfunction& f, const ModelParams& params);

/// (R_d(z))_{n n'} = sum_m J_{n-m} J_{n'-m} / (lambda_m - z).
Complex discrete_resolvent_entry(int n, int np, Complex z, const ModelParams& params);

/// R_{n n'}(y, z) = sum_m J_{n-m} J_{n'-m} / (lambda_m + epsilon a y - z), Im z != 0.
Complex full_resolvent_entry(int n, int np, double y, Complex z, const ModelParams& params);

/// <R_d(z) u, v> for finite-support l2 vectors.
Complex discrete_resolvent_form(const SiteVector& u, const SiteVector& v, Complex z,
                                const ModelParams& params);

/// <R_d(z) u, v> split at the pole lambda_k: residue / (lambda_k - z) + regular.
struct PoleSplit {
  Complex residue;
  Complex regular;
  Complex value(Complex distance) const { return residue / distance + regular; }
};
PoleSplit discrete_resolvent_split(const SiteVector& u, const SiteVector& v, Complex z, int k,
                                   const ModelParams& params);

/// int_{-pi}^{pi} h(y) / (lambda_m + epsilon a y - z) dy in closed form; on a
/// continued branch of strip m the band's logarithm is continued.
Complex band_cauchy(int m, const Polynomial& h, Complex z, const ModelParams& params,
                    const Branch& branch = Branch::physical());

/// <R(z) u, v> on the physical sheet (Im z != 0), exact for piecewise
/// polynomial profiles.
Complex resolvent_form(const LatticeFieldVector& u, const LatticeFieldVector& v, Complex z,
                       const ModelParams& params);

/// <R(z) u, v> for analytic vectors on any branch. Continued branches add the
/// jump of the strip band's Cauchy integral; z must lie in that strip.
Complex resolvent_form(const AnalyticVector& u, const AnalyticVector& v, Complex z,
                       const ModelParams& params, const Branch& branch = Branch::physical());

/// Profiles c_m(y) = <Phi(y), J^(m)> for m in [first, last], one polynomial per
/// piece of phi.
std::vector<std::vector<Polynomial>> projection_coefficients(const LatticeFieldVector& phi,
                                                             int first, int last,
                                                             const ModelParams& params);

/// Range of m for which <Phi(y), J^(m)> is non-negligible.
std::pair<int, int> coefficient_range(const LatticeFieldVector& phi, const ModelParams& params);

/// H Phi = (H_d x I + I x epsilon a y) Phi.
LatticeFieldVector apply_hamiltonian(const LatticeFieldVector& phi, const ModelParams& params);
/// H_d f.
SiteVector apply_discrete_hamiltonian(const SiteVector& f, const ModelParams& params);

/// E_lambda Phi.
LatticeFieldVector apply_spectral_projection(double lambda, const LatticeFieldVector& phi,
                                             const ModelParams& params);

/// eta(lambda) = <E_lambda Phi, Phi> for a fixed Phi, evaluated by Gauss-Legendre
/// quadrature split at the step location. Coefficient densities are cached.
class SpectralMeasure {
 public:
  SpectralMeasure(const LatticeFieldVector& phi, const ModelParams& params);

  double eta(double lambda) const;
  /// eta(+infinity).
  double total() const noexcept { return total_; }

 private:
  double partial(int band, double y_end) const;

  ModelParams params_;
  std::vector<double> breaks_;
  int first_ = 0;
  std::vector<std::vector<Polynomial>> density_;  // |c_m|^2 per piece
  std::vector<double> cumulative_;                // sum of full-band integrals below index
  double total_ = 0.0;
  std::vector<GaussLegendreRule> rules_;
};

double spectral_measure_eta(double lambda, const LatticeFieldVector& phi, const ModelParams& params);

}  // namespace stark
