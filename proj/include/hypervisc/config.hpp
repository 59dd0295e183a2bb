// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_CONFIG_HPP
#define HYPERVISC_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypervisc/profiles.hpp"
#include "hypervisc/timestepper.hpp"

namespace hypervisc {

/// A named velocity profile used for initial data, forcing or perturbations.
struct FieldProfile {
  std::string kind = "none";  // none | beltrami | taylor_green | baroclinic | single_mode | random | checkpoint
  double amplitude = 1.0;
  std::optional<std::uint64_t> seed;  // random only; defaults to the global seed
  double spectrum_profile = 1.5;      // random only
  WaveIndex mode{1, 0, 0};            // single_mode only
  std::filesystem::path path;         // checkpoint only
};

inline FieldProfile named_profile(std::string kind) {
  FieldProfile p;
  p.kind = std::move(kind);
  return p;
}

/// Experiment description loaded from TOML. See README for the key reference.
struct ExperimentConfig {
  std::uint64_t seed = 0;
  Equation equation = Equation::NavierStokes;
  int n[3] = {16, 16, 16};
  Rational dealias{2, 3};
  OperatorSpec op;
  double T = 0.1;
  double dt = 1e-3;
  int record_every = 1;
  double blowup_factor = 1e3;
  bool nonlinear = true;

  FieldProfile initial = named_profile("taylor_green");
  FieldProfile forcing;
  std::string forcing_kind = "none";  // none | steady | modulated
  double omega = 0.0;

  struct Output {
    bool checkpoints = true;
    int checkpoint_every = 0;  // in recorded snapshots; 0 = final state only
  } output;

  struct Window {
    double r = 0.0;  // 0 = use 1/(4C)
    double C = 1.0;
  } window;

  struct Sweep {
    std::vector<double> epsilons;
    std::vector<double> deltas{1.0};
    bool checkpoints = false;
  } sweep;

  struct Stability {
    std::vector<double> sizes{1e-2, 1e-3, 1e-4};
    FieldProfile perturbation = named_profile("random");
  } stability;

  struct Verify {
    int count = 1000;
    int n = 16;
    int mixed_n = 64;
    double spectrum_profile = 1.5;
    std::optional<std::uint64_t> seed;
    double nu = 1.0;
    double epsilon = 1.0;
    std::string corrupt = "none";  // none | quarter_as_half
  } verify;

  struct Diagnose {
    std::filesystem::path input;
  } diagnose;

  Grid grid() const;
  std::uint64_t seed_for(const FieldProfile& p) const { return p.seed.value_or(seed); }
  /// Checks cross-key rules (theorem-regime guards); throws InvalidArgument
  /// naming the offending key.
  void validate() const;
};

/// Parse TOML text. Relative paths are resolved against `base_dir`.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& file);

/// Materialize a profile on `grid` for `equation`.
VectorField make_field(const FieldProfile& p, const ExperimentConfig& cfg, const Grid& grid);
ForcingSpec make_forcing(const ExperimentConfig& cfg, const Grid& grid);
RunConfig make_run_config(const ExperimentConfig& cfg);

}  // namespace hypervisc

#endif  // HYPERVISC_CONFIG_HPP
