// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_EXPERIMENTS_HPP
#define HYPERVISC_EXPERIMENTS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "hypervisc/config.hpp"
#include "hypervisc/diagnostics.hpp"
#include "hypervisc/estimates.hpp"

namespace hypervisc {

struct RunSummary {
  long steps = 0;
  EnergyLedger ledger;
  EnergyEstimate estimate;
  ExistenceWindowReport window;
  State final_state;
};

/// Single run. Writes ledger.csv, run.json and checkpoints under `out`.
RunSummary run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out);

struct SweepReport {
  std::vector<double> epsilons;
  std::vector<double> deltas;
  /// errors[i][j] = |u_{eps_i} - u_0|_{L2(0,T; H^{1 - delta_j})}
  std::vector<std::vector<double>> errors;
  /// |d/dt u_{eps_i}|_{L2(0,T; H^{-2.6})}
  std::vector<double> time_derivative_norms;
  double reference_time_derivative_norm = 0.0;
  long steps = 0;
  std::size_t snapshots = 0;

  /// log(e_i / e_{i+1}) / log(eps_i / eps_{i+1}); NaN when undefined.
  double observed_rate(std::size_t i, std::size_t j) const;
  std::string csv() const;
  std::string time_derivative_csv() const;
};

/// Runs the eps = 0 reference and every eps of cfg.sweep in lockstep with
/// identical data; `threads` runs are advanced concurrently. When `out` is
/// nonempty writes sweep.csv, time_derivative.csv, sweep.json and, with
/// sweep.checkpoints, per-snapshot checkpoints under out/checkpoints.
SweepReport sweep_eps(const ExperimentConfig& cfg, int threads, const std::filesystem::path& out = {});

/// Recompute the sweep errors from the checkpoints written by sweep_eps.
SweepReport sweep_from_checkpoints(const std::filesystem::path& out, const std::vector<double>& deltas);

struct StabilityReport {
  std::vector<double> sizes;
  std::vector<DifferenceSeries> differences;
  std::vector<GronwallFit> fits;
  std::vector<double> base_graph_sq;  // |u_s|^2 in D(A^{1/2}) at each snapshot
  /// max over sizes of sup_t |delta(t)| / |delta(0)|, divided by the min.
  double sup_ratio_spread = 1.0;
  std::string difference_csv() const;
  std::string gronwall_csv() const;
};

/// Base run plus one run per perturbation size, advanced in lockstep.
/// Perturbations are the configured profile scaled to L2 norm `size`.
StabilityReport stability_study(const ExperimentConfig& cfg, int threads, const std::filesystem::path& out = {});

struct VerifyReport {
  RatioStats ns_full, ns_horizontal, pe_full, pe_horizontal;
  InterpolationReport interpolation_ns, interpolation_pe;
  MixedDerivativeReport mixed;
  bool passed() const { return interpolation_ns.passed && interpolation_pe.passed && mixed.passed; }
};

VerifyReport verify_estimates(const ExperimentConfig& cfg, int threads, const std::filesystem::path& out = {});

/// Per-snapshot diagnostics of every checkpoint below `input`; writes
/// diagnostics.csv. Returns the number of snapshots processed.
std::size_t diagnose(const ExperimentConfig& cfg, const std::filesystem::path& input,
                     const std::filesystem::path& out);

/// Write `text` to `file`, creating parent directories.
void write_text(const std::filesystem::path& file, const std::string& text);

}  // namespace hypervisc

#endif  // HYPERVISC_EXPERIMENTS_HPP
