// Acceptance criteria 1-11 at the default parameters: a = 1/(2 pi),
// epsilon = 1, mu = 0.3, beta = 0.1. One PASS/FAIL line per criterion, with
// the underlying checks and informational lines indented below it.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cli/checks.hpp"

#ifndef STARK_EXE
#error "STARK_EXE must name the stark executable"
#endif

using namespace stark;
using namespace stark::cli;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  std::vector<Check> checks;
  std::vector<std::string> info;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const auto suite_start = Clock::now();
  const ModelParams params = ModelParams::create(1.0 / (2.0 * kPi), 1.0);
  const ImpurityParams imp = ImpurityParams::create(0.3, 0.1);
  const NewtonOptions newton;
  constexpr std::uint64_t kSeed = 20240601;

  const std::vector<Criterion> criteria{
      {1, "eigen-ladder", 10.0,
       [&] { return Outcome{eigen_checks(params, 5, 40, 1e-10, 400, 1e-8), {}}; }},
      {2, "bessel identities", 1.0, [&] { return Outcome{bessel_checks(params, 10, 1e-12), {}}; }},
      {3, "resolvent oracle agreement", 30.0,
       [&] { return Outcome{resolvent_oracle_checks(params, 200, 50, kSeed, 1e-8), {}}; }},
      {4, "spectral-measure continuity", 20.0,
       [&] {
         return Outcome{spectral_measure_checks(params, 3, {1e-4, 1e-6}, 10.0, 10000, 1e-9), {}};
       }},
      {5, "pole cancellation", 10.0,
       [&] {
         Outcome o{pole_cancellation_checks(params, imp, {-1, 0, 1}, 2.0, {1e-2, 1e-3, 1e-4}), {}};
         const std::vector<double> radii{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
         for (int m : {-1, 0, 1}) {
           const auto rep = pole_cancellation_check(m, params, imp, MatrixElement::r22_00, radii);
           o.info.push_back(fmt::format("m={} r22(0, 0) maxima on r = {{{:.0e}}}: {{{:.4e}}}", m,
                                        fmt::join(radii, ", "), fmt::join(rep.maxima, ", ")));
         }
         return o;
       }},
      {6, "continuation analyticity", 20.0,
       [&] {
         return Outcome{continuation_checks(params, imp, 3, {1e-4, 1e-5, 1e-6}, 1e3, 1e-12), {}};
       }},
      {7, "resonance existence and residual", 10.0,
       [&] { return Outcome{resonance_checks(params, imp, -3, 3, newton, 1e-12, 1e-10, 1e-9), {}}; }},
      {8, "weak-coupling asymptotics", 20.0,
       [&] {
         WeakCouplingOptions wc;
         wc.betas = {0.2, 0.1, 0.05};
         Outcome o{weak_coupling_checks(params, imp, -3, 3, WidthFormula::published, wc, newton), {}};
         for (const Check& c :
              weak_coupling_checks(params, imp, -3, 3, WidthFormula::first_order, wc, newton)) {
           o.info.push_back(format_check(c));
         }
         return o;
       }},
      {9, "argument-principle audit", 60.0,
       [&] { return Outcome{winding_checks(params, imp, -2, 2, newton), {}}; }},
      {10, "friedrichs form equality", 10.0,
       [&] { return Outcome{friedrichs_checks(params, imp, 20, kSeed, 1e-9), {}}; }},
      {11, "determinism", 120.0,
       [&] {
         const auto dir = std::filesystem::temp_directory_path();
         const auto a = dir / "stark_acceptance_verify_a.txt";
         const auto b = dir / "stark_acceptance_verify_b.txt";
         Outcome o;
         for (const auto& path : {a, b}) {
           const std::string cmd =
               fmt::format("\"{}\" verify --out \"{}\" 2>/dev/null", STARK_EXE, path.string());
           const int status = std::system(cmd.c_str());
           o.info.push_back(fmt::format("stark verify exit status {}", WEXITSTATUS(status)));
         }
         const std::string ra = slurp(a);
         const std::string rb = slurp(b);
         const bool same = !ra.empty() && ra == rb;
         o.checks.push_back({"verify.byte-identical", same, static_cast<double>(ra.size()),
                             "identical", "report size in bytes"});
         std::filesystem::remove(a);
         std::filesystem::remove(b);
         return o;
       }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    std::string error;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = elapsed < c.budget_s;
    const bool pass = error.empty() && all_pass(outcome.checks) && in_time;
    if (!pass) ++failed;
    std::cout << fmt::format("{} criterion {:2d} {} ({:.2f} s, budget {:g} s)\n",
                             pass ? "PASS" : "FAIL", c.id, c.title, elapsed, c.budget_s);
    if (!error.empty()) std::cout << "    error: " << error << "\n";
    for (const Check& check : outcome.checks) std::cout << "    " << format_check(check) << "\n";
    for (const std::string& line : outcome.info) std::cout << "    info: " << line << "\n";
    std::cout.flush();
  }
  const double total = std::chrono::duration<double>(Clock::now() - suite_start).count();
  std::cout << fmt::format("SUMMARY {} of {} criteria passed ({:.2f} s total)\n",
                           static_cast<int>(criteria.size()) - failed, criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
