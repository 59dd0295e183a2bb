// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

// hvlab: runs, eps sweeps, stability studies, estimate verification and
// checkpoint diagnostics driven by a TOML config.

#include <fmt/format.h>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hypervisc/experiments.hpp"
#include "hypervisc/transform.hpp"

namespace fs = std::filesystem;
using namespace hypervisc;

namespace {

enum Exit { kOk = 0, kFailed = 1, kBadInput = 2, kSolverError = 3 };

struct Options {
  fs::path config;
  fs::path out = "hvlab_out";
  int threads = 1;
  bool deterministic = false;
  std::optional<std::uint64_t> seed;
  fs::path input;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "TOML experiment config")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "output directory")->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads for independent runs")->check(CLI::PositiveNumber);
  cmd->add_flag("--deterministic", o.deterministic, "reproducible FFT plans (byte-identical outputs)");
  cmd->add_option("--seed", o.seed, "override the global seed");
}

ExperimentConfig load(const Options& o) {
  ExperimentConfig cfg = load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  return cfg;
}

int cmd_run(const Options& o) {
  const RunSummary s = run_experiment(load(o), o.out);
  fmt::print("run: {} steps, {} records, final kinetic {:.6e}, energy residual {:.3e}\n", s.steps, s.ledger.size(),
             s.ledger.kinetic.back(), s.ledger.residual.back());
  return kOk;
}

int cmd_sweep(const Options& o) {
  const SweepReport r = sweep_eps(load(o), o.threads, o.out);
  for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
    for (std::size_t j = 0; j < r.deltas.size(); ++j) {
      fmt::print("eps {:<10g} delta {:<5g} error {:.6e}\n", r.epsilons[i], r.deltas[j], r.errors[i][j]);
    }
  }
  return kOk;
}

int cmd_stability(const Options& o) {
  const StabilityReport r = stability_study(load(o), o.threads, o.out);
  bool feasible = true;
  for (std::size_t i = 0; i < r.sizes.size(); ++i) {
    const auto& f = r.fits[i];
    feasible = feasible && f.envelope_holds;
    fmt::print("size {:<8g} sup ratio {:.6f} C_hat {:.6e} envelope {}\n", r.sizes[i], f.sup_ratio, f.c_hat,
               f.envelope_holds ? "holds" : "FAILS");
  }
  return feasible ? kOk : kFailed;
}

int cmd_verify(const Options& o) {
  const VerifyReport r = verify_estimates(load(o), o.threads, o.out);
  fmt::print("ns estimate max ratio: full {:.6e}, horizontal {:.6e}\n", r.ns_full.max, r.ns_horizontal.max);
  fmt::print("pe estimate max ratio: full {:.6e}, horizontal {:.6e}\n", r.pe_full.max, r.pe_horizontal.max);
  fmt::print("interpolation: {} violations of {} checks\n",
             r.interpolation_ns.violations + r.interpolation_pe.violations,
             r.interpolation_ns.checked + r.interpolation_pe.checked);
  fmt::print("mixed derivative: {} violations of {} modes\n", r.mixed.violations, r.mixed.checked);
  return r.passed() ? kOk : kFailed;
}

int cmd_diagnose(const Options& o) {
  const ExperimentConfig cfg = load(o);
  const fs::path input = o.input.empty() ? cfg.diagnose.input : o.input;
  if (input.empty()) throw InvalidArgument("diagnose.input: required (or pass --input)");
  const std::size_t n = diagnose(cfg, input, o.out);
  fmt::print("diagnose: {} snapshots\n", n);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyper-viscous Navier-Stokes and primitive-equation experiments"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "single run: checkpoints, ledger.csv, run.json");
  auto* sweep = app.add_subcommand("sweep-eps", "eps -> 0 convergence sweep against the eps = 0 reference");
  auto* stab = app.add_subcommand("stability", "perturbation study with Gronwall envelope fit");
  auto* verify = app.add_subcommand("verify", "randomized checks of the nonlinear and interpolation estimates");
  auto* diag = app.add_subcommand("diagnose", "per-snapshot diagnostics of stored checkpoints");
  for (auto* cmd : {run, sweep, stab, verify, diag}) add_common(cmd, o);
  diag->add_option("--input", o.input, "directory searched for checkpoints");

  CLI11_PARSE(app, argc, argv);
  set_deterministic_transforms(o.deterministic);

  try {
    if (run->parsed()) return cmd_run(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (stab->parsed()) return cmd_stability(o);
    if (verify->parsed()) return cmd_verify(o);
    if (diag->parsed()) return cmd_diagnose(o);
  } catch (const InvalidArgument& e) {
    fmt::print(stderr, "hvlab: invalid input: {}\n", e.what());
    return kBadInput;
  } catch (const SolverError& e) {
    fmt::print(stderr, "hvlab: solver error: {}\n", e.what());
    return kSolverError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "hvlab: {}\n", e.what());
    return kFailed;
  }
  return kFailed;
}
