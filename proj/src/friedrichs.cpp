#include "stark/friedrichs.hpp"

#include <cmath>

namespace stark {

namespace {

Complex site_integral(const LatticeFieldVector& v, int site) {
  const auto pieces = v.profile(site);
  Complex sum{};
  for (int k = 0; k < v.pieces(); ++k) sum += pieces[k].integral(v.breaks()[k], v.breaks()[k + 1]);
  return sum;
}

Complex discrete_at(const FriedrichsState& s, int k) {
  const auto it = s.discrete.find(k);
  return it == s.discrete.end() ? Complex{} : it->second;
}

}  // namespace

double spectral_density(int s, double omega, const ModelParams& params, const ImpurityParams& imp) {
  return imp.beta * params.J(-mode_index(omega, params)) * params.J(-s);
}

double coupling_density(int s, double omega, const ModelParams& params, const ImpurityParams& imp) {
  return spectral_density(s, omega, params, imp) / std::sqrt(params.field_scale());
}

MaterializedState materialize(const FriedrichsState& state, const ModelParams& params) {
  MaterializedState out;
  const int W = params.eigen_window();
  const double scale = std::sqrt(params.field_scale());
  std::map<int, Polynomial> field;
  for (const auto& [p, f] : state.packets) {
    for (int n = p - W; n <= p + W; ++n) field[n] += f * Complex{scale * params.J(n - p)};
  }
  for (const auto& [n, poly] : field) {
    if (!poly.is_zero()) out.field.set_uniform(n, poly);
  }
  for (const auto& [s, a] : state.discrete) {
    for (int n = s - W; n <= s + W; ++n) out.channel.values[n] += a * params.J(n - s);
  }
  return out;
}

Complex direct_form(const FriedrichsState& psi, const FriedrichsState& phi,
                    const ModelParams& params, const ImpurityParams& imp) {
  const auto u = materialize(psi, params);
  const auto v = materialize(phi, params);
  SiteVector hu2 = apply_discrete_hamiltonian(u.channel, params);
  for (const auto& [n, val] : u.channel.values) hu2.values[n] += imp.mu * val;
  return inner(apply_hamiltonian(u.field, params), v.field) +
         imp.beta * u.channel.at(0) * std::conj(site_integral(v.field, 0)) + inner(hu2, v.channel) +
         imp.beta * site_integral(u.field, 0) * std::conj(v.channel.at(0));
}

Complex expansion_form(const FriedrichsState& psi, const FriedrichsState& phi,
                       const ModelParams& params, const ImpurityParams& imp) {
  const double ea = params.field_scale();
  const GaussLegendreRule rule(32);
  Complex sum{};
  for (const auto& [s, a] : psi.discrete) {
    sum += (params.level(s) + imp.mu) * a * std::conj(discrete_at(phi, s));
  }
  // Continuum packets as functions of omega on their band.
  auto packet = [&](const Polynomial& f, int p, double omega) {
    return f((omega - params.level(p)) / ea);
  };
  for (const auto& [p, f] : psi.packets) {
    const auto it = phi.packets.find(p);
    if (it == phi.packets.end()) continue;
    const Polynomial& g = it->second;
    sum += rule.integrate(
        [&](double w) { return w * packet(f, p, w) * std::conj(packet(g, p, w)); },
        params.band_lo(p), params.band_hi(p));
  }
  for (const auto& [p, f] : psi.packets) {
    for (const auto& [s, b] : phi.discrete) {
      sum += std::conj(b) * rule.integrate(
                                [&](double w) {
                                  return coupling_density(s, w, params, imp) * packet(f, p, w);
                                },
                                params.band_lo(p), params.band_hi(p));
    }
  }
  for (const auto& [p, g] : phi.packets) {
    for (const auto& [s, a] : psi.discrete) {
      sum += a * rule.integrate(
                     [&](double w) {
                       return coupling_density(s, w, params, imp) * std::conj(packet(g, p, w));
                     },
                     params.band_lo(p), params.band_hi(p));
    }
  }
  return sum;
}

FriedrichsReport friedrichs_form_check(const FriedrichsState& psi, const FriedrichsState& phi,
                                       const ModelParams& params, const ImpurityParams& imp,
                                       double tol) {
  FriedrichsReport rep;
  rep.direct = direct_form(psi, phi, params, imp);
  rep.expansion = expansion_form(psi, phi, params, imp);
  rep.discrepancy = std::abs(rep.direct - rep.expansion);
  rep.pass = rep.discrepancy <= tol;
  return rep;
}

}  // namespace stark
