#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/output.hpp"
#include "stark/friedrichs.hpp"
#include "stark/resonances.hpp"

namespace stark::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string csv_preamble(const char* command, const RunConfig& c) {
  std::string s = fmt::format("# stark {}\n# schema_version={}\n", command, kSchemaVersion);
  for (const auto& [k, v] : c.entries) s += fmt::format("# {}={}\n", k, v);
  return s;
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json config_json(const RunConfig& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c.entries) j[k] = v;
  return j;
}

double grid_point(double lo, double hi, int points, int i) {
  return points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
}

NewtonOptions newton_options(const RunConfig& c) {
  NewtonOptions o;
  o.krein_tol = c.newton_tol;
  o.max_iterations = c.newton_max_iterations;
  o.beta_switch = c.beta_switch;
  return o;
}

}  // namespace

ModelParams make_params(const RunConfig& c) {
  return ModelParams::create(c.a, c.epsilon, c.theta_sign, c.tail_tol);
}

ImpurityParams make_impurity(const RunConfig& c) { return ImpurityParams::create(c.mu, c.beta); }

CommandResult cmd_spectrum(const RunConfig& c, const std::string& out) {
  const ModelParams params = make_params(c);
  std::vector<Complex> coeffs(c.spectrum_profile.begin(), c.spectrum_profile.end());
  LatticeFieldVector phi;
  phi.set_uniform(c.spectrum_site, Polynomial(coeffs));
  const SpectralMeasure measure(phi, params);

  const auto eta = parallel_map(c.lambda_points, c.workers, [&](int i) {
    return measure.eta(grid_point(c.lambda_min, c.lambda_max, c.lambda_points, i));
  });

  std::string s = csv_preamble("spectrum", c);
  s += "lambda,eta,band_index\n";
  for (int i = 0; i < c.lambda_points; ++i) {
    const double lambda = grid_point(c.lambda_min, c.lambda_max, c.lambda_points, i);
    s += fmt::format("{},{},{}\n", num(lambda), num(eta[i]), mode_index(lambda, params));
  }
  const double norm2 = phi.norm2();
  const double eta_inf = measure.total();
  s += fmt::format("# eta_infinity={}\n# norm_squared={}\n# difference={}\n", num(eta_inf),
                   num(norm2), num(std::abs(eta_inf - norm2)));

  std::string ladder = csv_preamble("spectrum ladder", c);
  ladder += "m,lambda,band_lo,band_hi,eigen_residual\n";
  for (int m = c.ladder_min; m <= c.ladder_max; ++m) {
    ladder += fmt::format("{},{},{},{},{}\n", m, num(params.level(m)), num(params.band_lo(m)),
                          num(params.band_hi(m)),
                          num(eigenvector_residual(eigenvector(m, params), params)));
  }
  CommandResult r;
  r.files = {{out, s}, {out + ".ladder.csv", ladder}};
  r.message = fmt::format("spectrum: {} samples, |eta(inf) - |Phi|^2| = {:.3e}", c.lambda_points,
                          std::abs(eta_inf - norm2));
  return r;
}

CommandResult cmd_krein_scan(const RunConfig& c, const std::string& out) {
  const ModelParams params = make_params(c);
  const ImpurityParams imp = make_impurity(c);
  const int per_branch = c.re_points * c.im_points;
  const int total = per_branch * static_cast<int>(c.branches.size());
  const auto values = parallel_map(total, c.workers, [&](int idx) {
    const auto& b = c.branches[idx / per_branch];
    const int rem = idx % per_branch;
    const Complex z{grid_point(c.re_min, c.re_max, c.re_points, rem % c.re_points),
                    grid_point(c.im_min, c.im_max, c.im_points, rem / c.re_points)};
    try {
      return krein_on(z, params, imp, b.branch).value;
    } catch (const Error&) {
      // Outside the strip, on the physical cut or at a pole: not a value.
      return Complex{std::nan(""), std::nan("")};
    }
  });
  std::string s = csv_preamble("krein-scan", c);
  s += "branch,re,im,abs_q,arg_q\n";
  int undefined = 0;
  for (int idx = 0; idx < total; ++idx) {
    const auto& b = c.branches[idx / per_branch];
    const int rem = idx % per_branch;
    const double re = grid_point(c.re_min, c.re_max, c.re_points, rem % c.re_points);
    const double im = grid_point(c.im_min, c.im_max, c.im_points, rem / c.re_points);
    const Complex q = values[idx];
    if (std::isnan(q.real())) ++undefined;
    s += fmt::format("{},{},{},{},{}\n", b.label, num(re), num(im),
                     num(std::isnan(q.real()) ? q.real() : std::abs(q)),
                     num(std::isnan(q.real()) ? q.real() : std::arg(q)));
  }
  CommandResult r;
  r.files = {{out, s}};
  r.message = fmt::format("krein-scan: {} points on {} branches ({} undefined)", total,
                          c.branches.size(), undefined);
  return r;
}

CommandResult cmd_resonances(const RunConfig& c, const std::string& out) {
  const ModelParams params = make_params(c);
  const ImpurityParams imp = make_impurity(c);
  check_mu(params, imp);
  const NewtonOptions options = newton_options(c);

  const int count = c.m_max - c.m_min + 1;
  const auto entries = parallel_map(count, c.workers, [&](int i) {
    return resonance_ladder(c.m_min + i, c.m_min + i, params, imp, options).front();
  });

  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "resonances";
  j["config"] = config_json(c);
  Json found = Json::array();
  Json failures = Json::array();
  for (const auto& e : entries) {
    if (!e.resonance) {
      failures.push_back(Json{{"m", e.m}, {"error", e.error}});
      continue;
    }
    const Resonance& r = *e.resonance;
    found.push_back(Json{{"m", r.m},
                         {"pole_index", r.pole_index},
                         {"direction", to_string(r.direction)},
                         {"location", complex_json(r.location)},
                         {"seed", complex_json(r.seed)},
                         {"first_order", complex_json(first_order_resonance(r.m, params, imp))},
                         {"residual", r.residual},
                         {"krein_abs", r.krein_abs},
                         {"order_gap", r.order_gap},
                         {"iterations", r.iterations}});
  }
  j["resonances"] = found;
  j["failures"] = failures;

  if (!c.beta_sweep.empty()) {
    Json sweep;
    sweep["betas"] = c.beta_sweep;
    Json strips = Json::array();
    const auto rows = parallel_map(count, c.workers, [&](int i) {
      const int m = c.m_min + i;
      Json row{{"m", m}};
      Json roots = Json::array();
      std::vector<double> gp, gf;
      try {
        for (double b : c.beta_sweep) {
          ImpurityParams stage = imp;
          stage.beta = b;
          const Resonance r = find_resonance(m, params, stage, std::nullopt, options);
          roots.push_back(complex_json(r.location));
          gp.push_back(std::abs(r.location - perturbative_resonance(m, params, stage)));
          gf.push_back(std::abs(r.location - first_order_resonance(m, params, stage)));
        }
      } catch (const Error& e) {
        row["error"] = e.what();
        return row;
      }
      auto ratios = [](const std::vector<double>& g) {
        std::vector<double> out;
        for (std::size_t k = 1; k < g.size(); ++k) out.push_back(g[k - 1] / g[k]);
        return out;
      };
      row["roots"] = roots;
      row["gap_published"] = gp;
      row["ratio_published"] = ratios(gp);
      row["gap_first_order"] = gf;
      row["ratio_first_order"] = ratios(gf);
      return row;
    });
    for (const auto& row : rows) strips.push_back(row);
    sweep["strips"] = strips;
    j["beta_sweep"] = sweep;
  }

  CommandResult r;
  r.files = {{out, j.dump(2) + "\n"}};
  r.exit_code = failures.empty() ? kExitOk : kExitNumerical;
  r.message = fmt::format("resonances: {} found, {} failed", found.size(), failures.size());
  return r;
}

CommandResult cmd_friedrichs_density(const RunConfig& c, const std::string& out) {
  const ModelParams params = make_params(c);
  const ImpurityParams imp = make_impurity(c);
  std::string s = csv_preamble("friedrichs-density", c);
  s += "s,omega,band,v\n";
  for (int sidx = c.s_min; sidx <= c.s_max; ++sidx) {
    for (int i = 0; i < c.omega_points; ++i) {
      const double omega = grid_point(c.omega_min, c.omega_max, c.omega_points, i);
      s += fmt::format("{},{},{},{}\n", sidx, num(omega), mode_index(omega, params),
                       num(spectral_density(sidx, omega, params, imp)));
    }
  }
  CommandResult r;
  r.files = {{out, s}};
  r.message = fmt::format("friedrichs-density: {} rows",
                          (c.s_max - c.s_min + 1) * c.omega_points);
  return r;
}

int run(int argc, char** argv) {
  CLI::App app{"Discrete Stark Hamiltonian with an impurity: spectra, Krein determinant, resonances"};
  std::string command;
  std::string config_path;
  std::vector<std::string> sets;
  std::string out;
  app.add_option("command", command, "spectrum | krein-scan | resonances | friedrichs-density | verify")
      ->required()
      ->check(CLI::IsMember({"spectrum", "krein-scan", "resonances", "friedrichs-density", "verify"}));
  app.add_option("--config", config_path, "INI configuration file (defaults if omitted)");
  app.add_option("--set", sets, "override, section.key=value (repeatable)");
  app.add_option("--out", out, "output path")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const RunConfig c = load_config(config_path, sets);
    CommandResult result;
    if (command == "spectrum") {
      result = cmd_spectrum(c, out);
    } else if (command == "krein-scan") {
      result = cmd_krein_scan(c, out);
    } else if (command == "resonances") {
      result = cmd_resonances(c, out);
    } else if (command == "friedrichs-density") {
      result = cmd_friedrichs_density(c, out);
    } else {
      result = cmd_verify(c, out);
    }
    for (const auto& f : result.files) {
      std::ofstream os(f.path, std::ios::binary);
      if (!os) {
        std::cerr << "error: cannot write " << f.path << "\n";
        return kExitValidation;
      }
      os << f.content;
    }
    std::cerr << result.message << "\n";
    return result.exit_code;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DegenerateMuError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const StripError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ModelInconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInconsistent;
  }
}

}  // namespace stark::cli
