#pragma once

#include <map>
#include <string>
#include <vector>

#include "stark/continuation.hpp"
#include "stark/errors.hpp"
#include "stark/numerics.hpp"

namespace stark::cli {

/// Bad configuration or command-line input (exit code 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

struct ScanBranch {
  Branch branch;
  std::string label;  // "physical", "above:m", "below:m"
};

struct Tolerances {
  double eigen_residual = 1e-10;
  double bessel = 1e-12;
  double ladder = 1e-8;
  double oracle = 1e-8;
  double eta_total = 1e-9;
  double edge_slope = 10.0;
  double self_adjoint = 1e-10;
  double lippmann_schwinger = 1e-9;
  double jump = 1e-12;
  double continuity_slope = 1e3;
  double krein_root = 1e-12;
  double dispersion = 1e-10;
  double pole_ratio = 2.0;
  double sweep_ratio_lo = 8.0;
  double sweep_ratio_hi = 32.0;
  double friedrichs = 1e-9;
  double tau_pole = 1e-9;
  double weak_coupling_im = 0.25;  // units of (beta^2 / epsilon a)^2
};

struct RunConfig {
  // model
  double a = 0.0;
  double epsilon = 0.0;
  ThetaSign theta_sign = ThetaSign::automatic;
  double tail_tol = kDefaultTailTol;
  // impurity
  double mu = 0.0;
  double beta = 0.0;
  // numerics
  int workers = 0;
  double newton_tol = 1e-12;
  int newton_max_iterations = 50;
  double beta_switch = 0.15;
  // spectrum
  int spectrum_site = 0;
  std::vector<double> spectrum_profile;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int lambda_points = 0;
  int ladder_min = 0;
  int ladder_max = 0;
  // krein-scan
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;
  int re_points = 0;
  int im_points = 0;
  std::vector<ScanBranch> branches;
  // resonances
  int m_min = 0;
  int m_max = 0;
  std::vector<double> beta_sweep;
  // friedrichs-density
  int s_min = 0;
  int s_max = 0;
  double omega_min = 0.0;
  double omega_max = 0.0;
  int omega_points = 0;
  // verify
  unsigned long long seed = 0;
  int oracle_n = 0;
  int eigen_n = 0;
  int oracle_samples = 0;
  std::vector<int> pole_strips;
  int friedrichs_samples = 0;
  Tolerances tol;

  /// Every key with its effective value, sorted, for run headers.
  std::map<std::string, std::string> entries;
};

/// Default value of every recognised key, as "section.key" -> text.
const std::map<std::string, std::string>& default_entries();

/// Reads an INI file (empty path: defaults only), applies "section.key=value"
/// overrides and validates. Throws ValidationError.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

}  // namespace stark::cli
