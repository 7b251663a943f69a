#include "stark/oracle.hpp"

#include <cmath>
#include <string>

namespace stark {

Eigen::MatrixXd truncated_hamiltonian(int N, double y, const ModelParams& params) {
  const int size = 2 * N + 1;
  const double t = params.hopping();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    const int n = i - N;
    h(i, i) = params.level(n) + params.field_scale() * y;
    if (i + 1 < size) {
      h(i, i + 1) = -t;
      h(i + 1, i) = -t;
    }
  }
  return h;
}

namespace {

Eigen::PartialPivLU<Eigen::MatrixXcd> factor(const Eigen::MatrixXd& h, Complex z) {
  Eigen::MatrixXcd a = h.cast<Complex>();
  a.diagonal().array() -= z;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  // Reciprocal condition estimate is unavailable for PartialPivLU; a tiny
  // pivot relative to the matrix scale signals a numerically singular solve.
  const double scale = a.cwiseAbs().maxCoeff();
  if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() < 1e-14 * scale) {
    throw PoleError("oracle: truncated matrix is singular at z", 0);
  }
  return lu;
}

}  // namespace

Complex oracle_resolvent_entry(int N, int n, int np, double y, Complex z,
                               const ModelParams& params) {
  if (std::abs(n) > N || std::abs(np) > N) {
    throw DomainError("oracle_resolvent_entry: site outside the truncation");
  }
  const auto lu = factor(truncated_hamiltonian(N, y, params), z);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * N + 1);
  rhs(np + N) = 1.0;
  const Eigen::VectorXcd x = lu.solve(rhs);
  return x(n + N);
}

int EigenLadder::closest(double x) const {
  Eigen::Index best = 0;
  (values.array() - x).abs().minCoeff(&best);
  return static_cast<int>(best);
}

EigenLadder oracle_eigen(int N, const ModelParams& params) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(truncated_hamiltonian(N, 0.0, params));
  return {N, solver.eigenvalues(), solver.eigenvectors()};
}

YRule YRule::composite(int panels, int order) {
  const GaussLegendreRule gl(order);
  YRule r;
  const double width = 2.0 * kPi / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = -kPi + p * width;
    const double half = 0.5 * width;
    for (int i = 0; i < gl.size(); ++i) {
      r.nodes.push_back(lo + half * (1.0 + gl.nodes()[i]));
      r.weights.push_back(half * gl.weights()[i]);
    }
  }
  return r;
}

ExtendedOracle::ExtendedOracle(int N, YRule rule, Complex z, const ModelParams& params,
                               const ImpurityParams& imp)
    : N_(N), rule_(std::move(rule)), z_(z), beta_(imp.beta) {
  const int size = 2 * N + 1;
  const Eigen::MatrixXd hd = truncated_hamiltonian(N, 0.0, params);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(size);
  e0(index(0)) = 1.0;
  Complex coupled{};
  field_lu_.reserve(rule_.nodes.size());
  for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
    Eigen::MatrixXd h = hd;
    h.diagonal().array() += params.field_scale() * rule_.nodes[k];
    field_lu_.push_back(factor(h, z));
    coupled += rule_.weights[k] * field_lu_.back().solve(e0)(index(0));
  }
  Eigen::MatrixXcd s = hd.cast<Complex>();
  s.diagonal().array() += imp.mu - z;
  s(index(0), index(0)) -= beta_ * beta_ * coupled;
  schur_lu_ = Eigen::PartialPivLU<Eigen::MatrixXcd>(s);
}

ExtendedOracle::Solution ExtendedOracle::solve(const LatticeFieldVector& u1,
                                               const SiteVector& u2) const {
  const int size = 2 * N_ + 1;
  const std::size_t K = rule_.nodes.size();
  std::vector<CVec> rhs(K, CVec::Zero(size));
  for (std::size_t k = 0; k < K; ++k) {
    const double sw = std::sqrt(rule_.weights[k]);
    for (const auto& [n, polys] : u1.sites()) {
      if (std::abs(n) <= N_) rhs[k](index(n)) = sw * u1.value(n, rule_.nodes[k]);
    }
  }
  CVec b2 = CVec::Zero(size);
  for (const auto& [n, v] : u2.values) {
    if (std::abs(n) <= N_) b2(index(n)) = v;
  }
  Complex projected{};
  for (std::size_t k = 0; k < K; ++k) {
    projected += std::sqrt(rule_.weights[k]) * field_lu_[k].solve(rhs[k])(index(0));
  }
  b2(index(0)) -= beta_ * projected;
  Solution out;
  out.channel = schur_lu_.solve(b2);
  const Complex f0 = out.channel(index(0));
  out.field.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    CVec r = rhs[k];
    r(index(0)) -= beta_ * std::sqrt(rule_.weights[k]) * f0;
    out.field[k] = field_lu_[k].solve(r);
  }
  return out;
}

BlockForms ExtendedOracle::blocks(const LatticeFieldVector& u1, const SiteVector& u2,
                                  const LatticeFieldVector& v1, const SiteVector& v2) const {
  auto field_pair = [&](const Solution& sol) {
    Complex sum{};
    for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
      const double sw = std::sqrt(rule_.weights[k]);
      for (const auto& [n, polys] : v1.sites()) {
        if (std::abs(n) <= N_) {
          sum += sol.field[k](index(n)) * std::conj(sw * v1.value(n, rule_.nodes[k]));
        }
      }
    }
    return sum;
  };
  auto channel_pair = [&](const Solution& sol) {
    Complex sum{};
    for (const auto& [n, v] : v2.values) {
      if (std::abs(n) <= N_) sum += sol.channel(index(n)) * std::conj(v);
    }
    return sum;
  };
  BlockForms out;
  const Solution a = solve(u1, {});
  const Solution b = solve({}, u2);
  out.r11 = field_pair(a);
  out.r21 = channel_pair(a);
  out.r12 = field_pair(b);
  out.r22 = channel_pair(b);
  return out;
}

Complex ExtendedOracle::r22(int n, int np) const {
  return blocks({}, SiteVector::unit(np), {}, SiteVector::unit(n)).r22;
}

}  // namespace stark
