#include "stark/continuation.hpp"

namespace stark {

namespace {

Polynomial site_profile(const AnalyticVector& v, int n) {
  const auto it = v.sites().find(n);
  return it == v.sites().end() ? Polynomial{} : it->second;
}

// c_m(s) = sum_n J_{n-m} u_n(s), with the coefficient-conjugated profiles if conjugate.
Complex band_coefficient(int m, Complex s, const AnalyticVector& u, bool conjugate,
                         const ModelParams& params) {
  Complex acc{};
  for (const auto& [n, p] : u.sites()) {
    acc += params.J(n - m) * (conjugate ? p.conj()(s) : p(s));
  }
  return acc;
}

}  // namespace

Strip Strip::of(int m, const ModelParams& params) {
  return {m, params.band_lo(m), params.band_hi(m)};
}

bool Strip::contains(Complex z, double edge_exclusion) const {
  return z.real() > lower + edge_exclusion && z.real() < upper - edge_exclusion;
}

const char* to_string(Direction d) {
  return d == Direction::from_above ? "from_above" : "from_below";
}

Branch branch_of(int m, Direction d) {
  return d == Direction::from_above ? Branch::from_above(m) : Branch::from_below(m);
}

Complex cauchy_form(int m, int n, int np, Complex z, const AnalyticVector& u1,
                    const AnalyticVector& v1, const ModelParams& params) {
  const Polynomial h = site_profile(u1, np) * site_profile(v1, n).conj();
  return band_cauchy(m, h, z, params);
}

ContinuedValue continued_cauchy_form(int m, int n, int np, Complex z, Direction direction,
                                     const AnalyticVector& u1, const AnalyticVector& v1,
                                     const ModelParams& params) {
  const Branch branch = branch_of(m, direction);
  check_in_strip(z, params, branch);
  const Polynomial h = site_profile(u1, np) * site_profile(v1, n).conj();
  return {z, Strip::of(m, params), direction, band_cauchy(m, h, z, params, branch)};
}

Complex cauchy_jump(int m, int n, int np, Complex z, const AnalyticVector& u1,
                    const AnalyticVector& v1, const ModelParams& params) {
  const Complex s = (z - params.level(m)) / params.field_scale();
  const Complex h = site_profile(u1, np)(s) * site_profile(v1, n).conj()(s);
  return Complex{0.0, 2.0 * kPi} / params.field_scale() * h;
}

Complex continued_resolvent_form(int m, Complex z, Direction direction, const AnalyticVector& u1,
                                 const AnalyticVector& v1, const ModelParams& params) {
  return resolvent_form(u1, v1, z, params, branch_of(m, direction));
}

Complex resolvent_jump(int m, Complex z, const AnalyticVector& u1, const AnalyticVector& v1,
                       const ModelParams& params) {
  const Complex s = (z - params.level(m)) / params.field_scale();
  const Complex cu = band_coefficient(m, s, u1, false, params);
  const Complex cv = band_coefficient(m, s, v1, true, params);
  return Complex{0.0, 2.0 * kPi} / params.field_scale() * cu * cv;
}

KreinEvaluation continued_krein(int m, Complex z, Direction direction, const ModelParams& params,
                                const ImpurityParams& imp) {
  return krein_on(z, params, imp, branch_of(m, direction));
}

Complex krein_jump(int m, Complex z, const ModelParams& params, const ImpurityParams& imp) {
  return Complex{0.0, 2.0 * kPi} * imp.beta * imp.beta / params.field_scale() *
         params.bessel().squared(m) * g_discrete(z, params, imp);
}

BlockForms blocks_on(const ExtendedVector& u, const ExtendedVector& v, Complex z,
                     const ModelParams& params, const ImpurityParams& imp, const Branch& branch) {
  if (branch.sheet == Sheet::physical && z.imag() == 0.0) {
    throw ContinuousSpectrumError("tau: real z lies in the continuous spectrum");
  }
  check_in_strip(z, params, branch);
  const AnalyticVector chi_hat = channel_chi_hat();
  FieldForms field;
  field.uv = resolvent_form(u.field, v.field, z, params, branch);
  field.u_chi = resolvent_form(u.field, chi_hat, z, params, branch);
  field.chi_v = resolvent_form(chi_hat, v.field, z, params, branch);
  field.chi_chi = g_continuum(z, params, branch);
  return assemble_blocks(field, u.channel, v.channel, z, params, imp);
}

Complex tau_form(Complex z, const ExtendedVector& u, const ExtendedVector& v,
                 const ModelParams& params, const ImpurityParams& imp) {
  return blocks_on(u, v, z, params, imp, Branch::physical()).total();
}

Complex continued_tau(int m, Complex z, Direction direction, const ExtendedVector& u,
                      const ExtendedVector& v, const ModelParams& params,
                      const ImpurityParams& imp) {
  return blocks_on(u, v, z, params, imp, branch_of(m, direction)).total();
}

}  // namespace stark
