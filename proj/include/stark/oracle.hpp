#pragma once

// Brute-force references on truncated lattices: dense solves and dense
// eigendecompositions that share no code path with the closed forms.

#include <vector>

#include <Eigen/Dense>

#include "stark/impurity.hpp"

namespace stark {

/// H_d + epsilon a y on sites [-N, N] (row i is site i - N).
Eigen::MatrixXd truncated_hamiltonian(int N, double y, const ModelParams& params);

/// x_n where (H_trunc(y) - z) x = e_n', by dense LU with partial pivoting.
/// Throws PoleError when the matrix is numerically singular.
Complex oracle_resolvent_entry(int N, int n, int np, double y, Complex z,
                               const ModelParams& params);

struct EigenLadder {
  int N = 0;
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, unit norm

  /// Eigenvalue closest to x.
  int closest(double x) const;
};

EigenLadder oracle_eigen(int N, const ModelParams& params);

/// Quadrature nodes and weights on (-pi, pi).
struct YRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// panels equal Gauss-Legendre panels of the given order each.
  static YRule composite(int panels, int order);
};

/// Truncated extended operator: the field y-discretized on the rule (one
/// lattice block per node, scaled by sqrt(weight)) plus the impurity lattice,
/// coupled through site 0 with strength beta. Solved at fixed z by per-node
/// dense LU and a dense Schur complement on the impurity block.
class ExtendedOracle {
 public:
  ExtendedOracle(int N, YRule rule, Complex z, const ModelParams& params,
                 const ImpurityParams& imp);

  /// The four block forms for field vectors sampled at the rule nodes.
  BlockForms blocks(const LatticeFieldVector& u1, const SiteVector& u2,
                    const LatticeFieldVector& v1, const SiteVector& v2) const;

  /// (R_B22)_{n n'}.
  Complex r22(int n, int np) const;

 private:
  using CVec = Eigen::VectorXcd;
  struct Solution {
    std::vector<CVec> field;  // per node, scaled variables
    CVec channel;
  };
  Solution solve(const LatticeFieldVector& u1, const SiteVector& u2) const;
  int index(int n) const { return n + N_; }

  int N_;
  YRule rule_;
  Complex z_;
  double beta_;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> field_lu_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> schur_lu_;
};

}  // namespace stark
