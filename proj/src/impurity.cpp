#include "stark/impurity.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace stark {

ImpurityParams ImpurityParams::create(double mu, double beta) {
  if (!std::isfinite(mu)) throw DomainError("impurity level mu must be finite");
  if (!std::isfinite(beta) || beta < 0.0) {
    throw DomainError("coupling beta must be finite and >= 0");
  }
  return {mu, beta};
}

SiteVector channel_chi() { return SiteVector::unit(0); }

AnalyticVector channel_chi_hat() { return AnalyticVector::unit_constant(0); }

int nearest_pole(Complex z, const ModelParams& params, const ImpurityParams& imp) {
  return static_cast<int>(std::lround((z.real() - imp.mu) / params.spacing()));
}

Complex g_discrete(Complex z, const ModelParams& params, const ImpurityParams& imp) {
  const int k = nearest_pole(z, params, imp);
  const Complex dist = params.level(k) + imp.mu - z;
  if (std::abs(dist) < 1e-12) {
    throw PoleError("g_discrete: z at lambda_p + mu for p = " + std::to_string(k), k);
  }
  return g_discrete_split(z, k, params, imp).value(dist);
}

PoleSplit g_discrete_split(Complex z, int k, const ModelParams& params, const ImpurityParams& imp) {
  PoleSplit out{};
  const int P = params.cutoff();
  for (int p = -P; p <= P; ++p) {
    const double w = params.bessel().squared(p);
    if (p == k) {
      out.residue = w;
    } else {
      out.regular += w / (params.level(p) + imp.mu - z);
    }
  }
  return out;
}

Complex g_continuum(Complex z, const ModelParams& params, const Branch& branch) {
  if (branch.sheet == Sheet::physical && z.imag() == 0.0) {
    throw ContinuousSpectrumError("g_continuum: real z lies in the continuous spectrum");
  }
  check_in_strip(z, params, branch);
  const int P = params.cutoff();
  Complex sum{};
  for (int p = -P; p <= P; ++p) {
    sum += params.bessel().squared(p) * band_log_on(p, z, params, branch);
  }
  return sum / params.field_scale();
}

KreinEvaluation krein_on(Complex z, const ModelParams& params, const ImpurityParams& imp,
                         const Branch& branch) {
  KreinEvaluation out;
  out.z = z;
  out.branch = branch;
  out.truncation_order = params.cutoff();
  out.tail_bound = params.bessel().tail_bound();
  const Complex gc = g_continuum(z, params, branch);
  const Complex gd = g_discrete(z, params, imp);
  out.value = 1.0 - imp.beta * imp.beta * gc * gd;
  return out;
}

KreinEvaluation krein_q(Complex z, const ModelParams& params, const ImpurityParams& imp) {
  return krein_on(z, params, imp, Branch::physical());
}

Complex krein_factored(Complex z, int k, const ModelParams& params, const ImpurityParams& imp,
                       const Branch& branch) {
  const Complex zeta = params.level(k) + imp.mu - z;
  const Complex gc = g_continuum(z, params, branch);
  const PoleSplit gd = g_discrete_split(z, k, params, imp);
  const double b2 = imp.beta * imp.beta;
  return zeta * (1.0 - b2 * gc * gd.regular) - b2 * gc * gd.residue;
}

BlockForms assemble_blocks(const FieldForms& field, const SiteVector& u2, const SiteVector& v2,
                           Complex z, const ModelParams& params, const ImpurityParams& imp) {
  const int k = nearest_pole(z, params, imp);
  const Complex zeta = params.level(k) + imp.mu - z;
  const Complex zmu = z - imp.mu;
  const SiteVector chi = channel_chi();
  const PoleSplit gd = g_discrete_split(z, k, params, imp);
  const PoleSplit uv = discrete_resolvent_split(u2, v2, zmu, k, params);
  const PoleSplit uchi = discrete_resolvent_split(u2, chi, zmu, k, params);
  const PoleSplit chiv = discrete_resolvent_split(chi, v2, zmu, k, params);

  const double beta = imp.beta;
  const double b2 = beta * beta;
  const Complex gc = field.chi_chi;
  const Complex D = zeta * (1.0 - b2 * gc * gd.regular) - b2 * gc * gd.residue;
  const double scale = std::abs(zeta) + b2 * std::abs(gc) * (gd.residue.real() +
                                                             std::abs(zeta * gd.regular));
  if (beta == 0.0 && std::abs(zeta) < 1e-12) {
    throw PoleError("resolvent block at lambda_k + mu with beta = 0, k = " + std::to_string(k), k);
  }
  if (std::abs(D) <= 1e-14 * scale) {
    throw SingularKreinError("Krein determinant vanishes at z = (" + std::to_string(z.real()) +
                             ", " + std::to_string(z.imag()) + ")");
  }

  BlockForms out;
  out.r11 = field.uv + b2 * (gd.residue + zeta * gd.regular) / D * field.u_chi * field.chi_v;
  out.r22 = uv.residue * (1.0 - b2 * gc * gd.regular) / D + uv.regular +
            (b2 * gc / D) * (uchi.residue * chiv.regular + chiv.residue * uchi.regular +
                             zeta * uchi.regular * chiv.regular);
  out.r12 = -(beta / D) * (uchi.residue + zeta * uchi.regular) * field.chi_v;
  out.r21 = -(beta / D) * field.u_chi * (chiv.residue + zeta * chiv.regular);
  out.krein = zeta == Complex{} ? Complex{std::numeric_limits<double>::infinity(), 0.0} : D / zeta;
  return out;
}

BlockForms resolvent_blocks(const LatticeFieldVector& u1, const SiteVector& u2,
                            const LatticeFieldVector& v1, const SiteVector& v2, Complex z,
                            const ModelParams& params, const ImpurityParams& imp) {
  if (z.imag() == 0.0) {
    throw ContinuousSpectrumError("resolvent blocks: real z lies in the continuous spectrum");
  }
  const LatticeFieldVector chi_hat(channel_chi_hat());
  FieldForms field;
  field.uv = resolvent_form(u1, v1, z, params);
  field.u_chi = resolvent_form(u1, chi_hat, z, params);
  field.chi_v = resolvent_form(chi_hat, v1, z, params);
  field.chi_chi = g_continuum(z, params);
  return assemble_blocks(field, u2, v2, z, params, imp);
}

Complex r11_form(const LatticeFieldVector& u1, const LatticeFieldVector& v1, Complex z,
                 const ModelParams& params, const ImpurityParams& imp) {
  return resolvent_blocks(u1, {}, v1, {}, z, params, imp).r11;
}

Complex r22_entry(int n, int np, Complex z, const ModelParams& params, const ImpurityParams& imp) {
  return resolvent_blocks({}, SiteVector::unit(np), {}, SiteVector::unit(n), z, params, imp).r22;
}

Complex r12_form(const SiteVector& u2, const LatticeFieldVector& v1, Complex z,
                 const ModelParams& params, const ImpurityParams& imp) {
  return resolvent_blocks({}, u2, v1, {}, z, params, imp).r12;
}

Complex r21_form(const LatticeFieldVector& u1, const SiteVector& v2, Complex z,
                 const ModelParams& params, const ImpurityParams& imp) {
  return resolvent_blocks(u1, {}, {}, v2, z, params, imp).r21;
}

const char* to_string(MatrixElement e) {
  switch (e) {
    case MatrixElement::r11_chi: return "r11(chi_hat, chi_hat)";
    case MatrixElement::r12_chi: return "r12(chi, chi_hat)";
    case MatrixElement::r21_chi: return "r21(chi_hat, chi)";
    case MatrixElement::r22_00: return "r22(0, 0)";
  }
  return "unknown";
}

PoleCancellationReport pole_cancellation_check(int m, const ModelParams& params,
                                               const ImpurityParams& imp, MatrixElement element,
                                               const std::vector<double>& radii, int nodes) {
  PoleCancellationReport rep;
  rep.m = m;
  rep.center = params.level(m) + imp.mu;
  rep.element = element;
  rep.beta = imp.beta;
  rep.radii = radii;
  const LatticeFieldVector chi_hat(channel_chi_hat());
  const SiteVector chi = channel_chi();
  for (double r : radii) {
    double worst = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double angle = (k + 0.5) * 2.0 * kPi / nodes;
      const Complex z = rep.center + std::polar(r, angle);
      BlockForms b;
      switch (element) {
        case MatrixElement::r11_chi:
          b = resolvent_blocks(chi_hat, {}, chi_hat, {}, z, params, imp);
          worst = std::max(worst, std::abs(b.r11));
          break;
        case MatrixElement::r12_chi:
          b = resolvent_blocks({}, chi, chi_hat, {}, z, params, imp);
          worst = std::max(worst, std::abs(b.r12));
          break;
        case MatrixElement::r21_chi:
          b = resolvent_blocks(chi_hat, {}, {}, chi, z, params, imp);
          worst = std::max(worst, std::abs(b.r21));
          break;
        case MatrixElement::r22_00:
          b = resolvent_blocks({}, chi, {}, chi, z, params, imp);
          worst = std::max(worst, std::abs(b.r22));
          break;
      }
    }
    rep.maxima.push_back(worst);
  }
  rep.bounded = true;
  for (std::size_t i = 1; i < rep.maxima.size(); ++i) {
    rep.ratios.push_back(rep.maxima[i] / rep.maxima[i - 1]);
    if (rep.ratios.back() > 2.0) rep.bounded = false;
  }
  return rep;
}

}  // namespace stark
