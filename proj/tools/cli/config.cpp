#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace stark::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const std::map<std::string, std::string>& entries) : entries_(entries) {}

  const std::string& text(const std::string& key) const { return entries_.at(key); }

  double real(const std::string& key) const {
    const std::string& s = text(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ValidationError(key + ": expected a finite number, got '" + s + "'");
    }
    return v;
  }

  long long integer(const std::string& key) const {
    const std::string& s = text(key);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw ValidationError(key + ": expected an integer, got '" + s + "'");
    }
    return v;
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(text(key))) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc{} || ptr != item.data() + item.size() || !std::isfinite(v)) {
        throw ValidationError(key + ": bad list element '" + item + "'");
      }
      out.push_back(v);
    }
    return out;
  }

  std::vector<int> integers(const std::string& key) const {
    std::vector<int> out;
    for (const auto& item : split_list(text(key))) {
      int v = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc{} || ptr != item.data() + item.size()) {
        throw ValidationError(key + ": bad list element '" + item + "'");
      }
      out.push_back(v);
    }
    return out;
  }

 private:
  const std::map<std::string, std::string>& entries_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

ScanBranch parse_branch(const std::string& item) {
  if (item == "physical") return {Branch::physical(), item};
  const auto colon = item.find(':');
  if (colon != std::string::npos) {
    const std::string kind = item.substr(0, colon);
    const std::string index = item.substr(colon + 1);
    int m = 0;
    const auto [ptr, ec] = std::from_chars(index.data(), index.data() + index.size(), m);
    if (ec == std::errc{} && ptr == index.data() + index.size()) {
      if (kind == "above") return {Branch::from_above(m), item};
      if (kind == "below") return {Branch::from_below(m), item};
    }
  }
  throw ValidationError("scan.branches: expected physical, above:<m> or below:<m>, got '" +
                        item + "'");
}

}  // namespace

const std::map<std::string, std::string>& default_entries() {
  static const std::map<std::string, std::string> defaults = {
      {"model.a", "0.15915494309189535"},
      {"model.epsilon", "1"},
      {"model.theta_sign", "auto"},
      {"model.tail_tol", "1e-14"},
      {"impurity.mu", "0.3"},
      {"impurity.beta", "0.1"},
      {"numerics.workers", "0"},
      {"numerics.newton_tol", "1e-12"},
      {"numerics.newton_max_iterations", "50"},
      {"numerics.beta_switch", "0.15"},
      {"spectrum.site", "0"},
      {"spectrum.profile", "1"},
      {"spectrum.lambda_min", "-4"},
      {"spectrum.lambda_max", "4"},
      {"spectrum.points", "801"},
      {"spectrum.ladder_min", "-5"},
      {"spectrum.ladder_max", "5"},
      {"scan.re_min", "-0.45"},
      {"scan.re_max", "0.45"},
      {"scan.im_min", "-0.1"},
      {"scan.im_max", "0.1"},
      {"scan.re_points", "91"},
      {"scan.im_points", "41"},
      {"scan.branches", "physical, above:0"},
      {"resonances.m_min", "-3"},
      {"resonances.m_max", "3"},
      {"resonances.beta_sweep", "0.2, 0.1, 0.05"},
      {"friedrichs.s_min", "-3"},
      {"friedrichs.s_max", "3"},
      {"friedrichs.omega_min", "-3.5"},
      {"friedrichs.omega_max", "3.5"},
      {"friedrichs.points", "701"},
      {"verify.seed", "20240601"},
      {"verify.oracle_n", "200"},
      {"verify.eigen_n", "400"},
      {"verify.oracle_samples", "20"},
      {"verify.pole_strips", "-1, 0, 1"},
      {"verify.friedrichs_samples", "20"},
      {"tolerances.eigen_residual", "1e-10"},
      {"tolerances.bessel", "1e-12"},
      {"tolerances.ladder", "1e-8"},
      {"tolerances.oracle", "1e-8"},
      {"tolerances.eta_total", "1e-9"},
      {"tolerances.edge_slope", "10"},
      {"tolerances.self_adjoint", "1e-10"},
      {"tolerances.lippmann_schwinger", "1e-9"},
      {"tolerances.jump", "1e-12"},
      {"tolerances.continuity_slope", "1000"},
      {"tolerances.krein_root", "1e-12"},
      {"tolerances.dispersion", "1e-10"},
      {"tolerances.pole_ratio", "2"},
      {"tolerances.sweep_ratio_lo", "8"},
      {"tolerances.sweep_ratio_hi", "32"},
      {"tolerances.friedrichs", "1e-9"},
      {"tolerances.tau_pole", "1e-9"},
      {"tolerances.weak_coupling_im", "0.25"},
  };
  return defaults;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::map<std::string, std::string> entries = default_entries();
  auto assign = [&](const std::string& key, const std::string& value, const std::string& origin) {
    if (!entries.count(key)) throw ValidationError(origin + ": unknown key '" + key + "'");
    entries[key] = trim(value);
  };

  if (!path.empty()) {
    boost::property_tree::ptree tree;
    try {
      boost::property_tree::ini_parser::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ValidationError("config: " + std::string(e.what()));
    }
    for (const auto& [section, body] : tree) {
      if (!body.data().empty()) {
        throw ValidationError(path + ": key '" + section + "' outside a section");
      }
      for (const auto& [key, value] : body) {
        assign(section + "." + key, value.get_value<std::string>(), path);
      }
    }
  }
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + item + "'");
    assign(trim(item.substr(0, eq)), item.substr(eq + 1), "--set");
  }

  const Reader r(entries);
  RunConfig c;
  c.entries = entries;

  c.a = r.real("model.a");
  c.epsilon = r.real("model.epsilon");
  require(c.a > 0.0, "model.a must be > 0");
  require(c.epsilon > 0.0, "model.epsilon must be > 0");
  const std::string sign = r.text("model.theta_sign");
  if (sign == "auto") {
    c.theta_sign = ThetaSign::automatic;
  } else if (sign == "+1" || sign == "1" || sign == "positive") {
    c.theta_sign = ThetaSign::positive;
  } else if (sign == "-1" || sign == "negative") {
    c.theta_sign = ThetaSign::negative;
  } else {
    throw ValidationError("model.theta_sign must be auto, +1 or -1");
  }
  c.tail_tol = r.real("model.tail_tol");
  require(c.tail_tol > 0.0 && c.tail_tol < 1e-6, "model.tail_tol must lie in (0, 1e-6)");

  c.mu = r.real("impurity.mu");
  c.beta = r.real("impurity.beta");
  require(c.beta >= 0.0, "impurity.beta must be >= 0");

  c.workers = static_cast<int>(r.integer("numerics.workers"));
  require(c.workers >= 0, "numerics.workers must be >= 0 (0 = hardware concurrency)");
  c.newton_tol = r.real("numerics.newton_tol");
  require(c.newton_tol > 0.0, "numerics.newton_tol must be > 0");
  c.newton_max_iterations = static_cast<int>(r.integer("numerics.newton_max_iterations"));
  require(c.newton_max_iterations > 0, "numerics.newton_max_iterations must be > 0");
  c.beta_switch = r.real("numerics.beta_switch");
  require(c.beta_switch > 0.0, "numerics.beta_switch must be > 0");

  c.spectrum_site = static_cast<int>(r.integer("spectrum.site"));
  c.spectrum_profile = r.reals("spectrum.profile");
  require(!c.spectrum_profile.empty(), "spectrum.profile must list at least one coefficient");
  require(c.spectrum_profile.size() <= kDefaultMaxDegree + 1, "spectrum.profile degree exceeds 8");
  c.lambda_min = r.real("spectrum.lambda_min");
  c.lambda_max = r.real("spectrum.lambda_max");
  c.lambda_points = static_cast<int>(r.integer("spectrum.points"));
  require(c.lambda_points >= 1, "spectrum.points must be >= 1 (empty lambda grid)");
  require(c.lambda_min <= c.lambda_max, "spectrum.lambda_min must not exceed lambda_max");
  c.ladder_min = static_cast<int>(r.integer("spectrum.ladder_min"));
  c.ladder_max = static_cast<int>(r.integer("spectrum.ladder_max"));
  require(c.ladder_min <= c.ladder_max, "spectrum.ladder_min must not exceed ladder_max");

  c.re_min = r.real("scan.re_min");
  c.re_max = r.real("scan.re_max");
  c.im_min = r.real("scan.im_min");
  c.im_max = r.real("scan.im_max");
  c.re_points = static_cast<int>(r.integer("scan.re_points"));
  c.im_points = static_cast<int>(r.integer("scan.im_points"));
  require(c.re_min < c.re_max && c.im_min < c.im_max,
          "scan rectangle is malformed: need re_min < re_max and im_min < im_max");
  require(c.re_points >= 2 && c.im_points >= 2, "scan.re_points and scan.im_points must be >= 2");
  for (const auto& item : split_list(r.text("scan.branches"))) c.branches.push_back(parse_branch(item));
  require(!c.branches.empty(), "scan.branches must not be empty");

  c.m_min = static_cast<int>(r.integer("resonances.m_min"));
  c.m_max = static_cast<int>(r.integer("resonances.m_max"));
  require(c.m_min <= c.m_max, "resonances.m_min must not exceed m_max");
  c.beta_sweep = r.reals("resonances.beta_sweep");
  for (double b : c.beta_sweep) require(b > 0.0, "resonances.beta_sweep entries must be > 0");

  c.s_min = static_cast<int>(r.integer("friedrichs.s_min"));
  c.s_max = static_cast<int>(r.integer("friedrichs.s_max"));
  require(c.s_min <= c.s_max, "friedrichs.s_min must not exceed s_max");
  c.omega_min = r.real("friedrichs.omega_min");
  c.omega_max = r.real("friedrichs.omega_max");
  c.omega_points = static_cast<int>(r.integer("friedrichs.points"));
  require(c.omega_points >= 1, "friedrichs.points must be >= 1");
  require(c.omega_min <= c.omega_max, "friedrichs.omega_min must not exceed omega_max");

  const long long seed = r.integer("verify.seed");
  require(seed >= 0, "verify.seed must be >= 0");
  c.seed = static_cast<unsigned long long>(seed);
  c.oracle_n = static_cast<int>(r.integer("verify.oracle_n"));
  c.eigen_n = static_cast<int>(r.integer("verify.eigen_n"));
  c.oracle_samples = static_cast<int>(r.integer("verify.oracle_samples"));
  c.friedrichs_samples = static_cast<int>(r.integer("verify.friedrichs_samples"));
  require(c.oracle_n >= 50, "verify.oracle_n must be >= 50");
  require(c.eigen_n >= 50, "verify.eigen_n must be >= 50");
  require(c.oracle_samples >= 1, "verify.oracle_samples must be >= 1");
  require(c.friedrichs_samples >= 1, "verify.friedrichs_samples must be >= 1");
  c.pole_strips = r.integers("verify.pole_strips");

  auto tol = [&](const char* key, double& field) {
    field = r.real(std::string("tolerances.") + key);
    require(field > 0.0, std::string("tolerances.") + key + " must be > 0");
  };
  tol("eigen_residual", c.tol.eigen_residual);
  tol("bessel", c.tol.bessel);
  tol("ladder", c.tol.ladder);
  tol("oracle", c.tol.oracle);
  tol("eta_total", c.tol.eta_total);
  tol("edge_slope", c.tol.edge_slope);
  tol("self_adjoint", c.tol.self_adjoint);
  tol("lippmann_schwinger", c.tol.lippmann_schwinger);
  tol("jump", c.tol.jump);
  tol("continuity_slope", c.tol.continuity_slope);
  tol("krein_root", c.tol.krein_root);
  tol("dispersion", c.tol.dispersion);
  tol("pole_ratio", c.tol.pole_ratio);
  tol("sweep_ratio_lo", c.tol.sweep_ratio_lo);
  tol("sweep_ratio_hi", c.tol.sweep_ratio_hi);
  tol("friedrichs", c.tol.friedrichs);
  tol("tau_pole", c.tol.tau_pole);
  tol("weak_coupling_im", c.tol.weak_coupling_im);
  require(c.tol.sweep_ratio_lo < c.tol.sweep_ratio_hi,
          "tolerances.sweep_ratio_lo must be below sweep_ratio_hi");
  return c;
}

}  // namespace stark::cli
