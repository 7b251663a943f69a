#include <functional>

#include <fmt/format.h>

#include "cli/checks.hpp"
#include "cli/commands.hpp"
#include "cli/output.hpp"

namespace stark::cli {

namespace {

struct Suite {
  std::string name;
  std::function<std::vector<Check>()> run;
};

}  // namespace

CommandResult cmd_verify(const RunConfig& c, const std::string& out) {
  const ModelParams params = make_params(c);
  const ImpurityParams imp = make_impurity(c);
  const Tolerances& tol = c.tol;
  NewtonOptions options;
  options.krein_tol = c.newton_tol;
  options.max_iterations = c.newton_max_iterations;
  options.beta_switch = c.beta_switch;
  WeakCouplingOptions wc;
  wc.betas = c.beta_sweep;
  wc.ratio_lo = tol.sweep_ratio_lo;
  wc.ratio_hi = tol.sweep_ratio_hi;
  wc.im_bound = tol.weak_coupling_im;

  const std::vector<Suite> suites{
      {"eigen", [&] { return eigen_checks(params, 5, 40, tol.eigen_residual, c.eigen_n, tol.ladder); }},
      {"bessel", [&] { return bessel_checks(params, 10, tol.bessel); }},
      {"oracle.resolvent",
       [&] { return resolvent_oracle_checks(params, c.oracle_n, c.oracle_samples, c.seed, tol.oracle); }},
      {"spectral",
       [&] {
         return spectral_measure_checks(params, 3, {1e-4, 1e-6}, tol.edge_slope, 10000,
                                        tol.eta_total);
       }},
      {"oracle.extended", [&] { return extended_oracle_checks(params, imp, 40, tol.oracle); }},
      {"resolvent",
       [&] {
         return resolvent_identity_checks(params, imp, c.oracle_samples, c.seed + 1,
                                          tol.self_adjoint, tol.lippmann_schwinger);
       }},
      {"pole-cancellation",
       [&] {
         return pole_cancellation_checks(params, imp, c.pole_strips, tol.pole_ratio,
                                         {1e-2, 1e-3, 1e-4});
       }},
      {"continuation",
       [&] {
         return continuation_checks(params, imp, 3, {1e-4, 1e-5, 1e-6}, tol.continuity_slope,
                                    tol.jump);
       }},
      {"resonance",
       [&] {
         return resonance_checks(params, imp, c.m_min, c.m_max, options, tol.krein_root,
                                 tol.dispersion, tol.tau_pole);
       }},
      {"weak-coupling.published",
       [&] {
         return weak_coupling_checks(params, imp, c.m_min, c.m_max, WidthFormula::published, wc,
                                     options);
       }},
      {"weak-coupling.first-order",
       [&] {
         return weak_coupling_checks(params, imp, c.m_min, c.m_max, WidthFormula::first_order, wc,
                                     options);
       }},
      {"argument-principle",
       [&] { return winding_checks(params, imp, c.m_min, c.m_max, options); }},
      {"friedrichs",
       [&] { return friedrichs_checks(params, imp, c.friedrichs_samples, c.seed + 2, tol.friedrichs); }},
  };

  const auto results = parallel_map(static_cast<int>(suites.size()), c.workers, [&](int i) {
    try {
      return suites[i].run();
    } catch (const Error& e) {
      // A check that cannot be evaluated has failed.
      return std::vector<Check>{{suites[i].name, false, 0.0, "evaluated", e.what()}};
    }
  });

  std::string report = fmt::format("# stark verify\n# schema_version={}\n", kSchemaVersion);
  for (const auto& [k, v] : c.entries) report += fmt::format("# {}={}\n", k, v);
  int total = 0;
  int passed = 0;
  for (const auto& group : results) {
    for (const Check& check : group) {
      report += format_check(check) + "\n";
      ++total;
      if (check.pass) ++passed;
    }
  }
  report += fmt::format("SUMMARY {} of {} checks passed\n", passed, total);

  CommandResult r;
  r.files = {{out, report}};
  r.exit_code = passed == total ? kExitOk : kExitInconsistent;
  r.message = fmt::format("verify: {} of {} checks passed", passed, total);
  return r;
}

}  // namespace stark::cli
