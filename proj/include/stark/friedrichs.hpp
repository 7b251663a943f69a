#pragma once

// Lee-Friedrichs representation of H_B: discrete states |s> = (0, J^(s)),
// continuum states |omega> = (J^(M(omega)) delta(y - y*(omega)), 0) and the
// coupling density between them.

#include <map>

#include "stark/impurity.hpp"

namespace stark {

/// v_s(omega) = beta J_{-M(omega)}(theta) J_{-s}(theta).
double spectral_density(int s, double omega, const ModelParams& params, const ImpurityParams& imp);

/// Coupling between |s> and the delta(omega - omega')-normalized |omega>:
/// v_s(omega) / sqrt(epsilon a).
double coupling_density(int s, double omega, const ModelParams& params, const ImpurityParams& imp);

/// Finite combination sum_s a_s |s> + int f(omega) |omega> d omega, the packet
/// given per band p as a polynomial in y = (omega - lambda_p) / (epsilon a).
struct FriedrichsState {
  std::map<int, Complex> discrete;
  std::map<int, Polynomial> packets;
};

/// The state as an element (Phi, f) of the extended space, with
/// Phi_n(y) = sqrt(epsilon a) sum_p J_{n-p} f_p(y) and f = sum_s a_s J^(s).
struct MaterializedState {
  LatticeFieldVector field;
  SiteVector channel;
};
MaterializedState materialize(const FriedrichsState& state, const ModelParams& params);

/// <H_B psi, phi> from the operator definition on the lattice.
Complex direct_form(const FriedrichsState& psi, const FriedrichsState& phi,
                    const ModelParams& params, const ImpurityParams& imp);

/// <H_B psi, phi> from the Lee-Friedrichs expansion: discrete energies
/// lambda_s + mu, omega-quadrature of the continuum and the coupling terms.
Complex expansion_form(const FriedrichsState& psi, const FriedrichsState& phi,
                       const ModelParams& params, const ImpurityParams& imp);

struct FriedrichsReport {
  Complex direct;
  Complex expansion;
  double discrepancy = 0.0;
  bool pass = false;
};

FriedrichsReport friedrichs_form_check(const FriedrichsState& psi, const FriedrichsState& phi,
                                       const ModelParams& params, const ImpurityParams& imp,
                                       double tol = 1e-9);

}  // namespace stark
