// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "hypervisc/experiments.hpp"

using namespace hypervisc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hypervisc_test_experiments_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// int_0^T (exp(-a t) - exp(-b t))^2 dt
double squared_gap_integral(double a, double b, double T) {
  const auto f = [T](double c) { return c == 0.0 ? T : (1.0 - std::exp(-c * T)) / c; };
  return f(2.0 * a) + f(2.0 * b) - 2.0 * f(a + b);
}

ExperimentConfig small_config() {
  return parse_config(R"(
[grid]
n = 8
[operator]
nu = 0.05
epsilon = 0.01
[time]
T = 0.05
dt = 1e-3
record_every = 5
[initial]
profile = "random"
amplitude = 0.5
)");
}

}  // namespace

TEST_CASE("run writes ledger rows, manifest and checkpoints") {
  const fs::path out = scratch("run");
  ExperimentConfig c = small_config();
  c.output.checkpoint_every = 2;
  const RunSummary s = run_experiment(c, out);
  CHECK(s.steps == 50);
  CHECK(s.ledger.size() == 11u);  // steps / record_every + 1
  std::ifstream ledger(out / "ledger.csv");
  int lines = 0;
  for (std::string line; std::getline(ledger, line);) ++lines;
  CHECK(lines == 12);
  CHECK(fs::exists(out / "run.json"));
  CHECK(fs::exists(out / "checkpoints" / "snap_000000" / "manifest.json"));
  CHECK(fs::exists(out / "checkpoints" / "snap_000010" / "manifest.json"));
  CHECK_FALSE(fs::exists(out / "checkpoints" / "snap_000001"));
  CHECK(s.window.window > 0.0);

  const fs::path diag = scratch("diagnose");
  CHECK(diagnose(c, out, diag) == 6u);
  CHECK(slurp(diag / "diagnostics.csv").find("checkpoints/snap_000010,0.05") != std::string::npos);
}

TEST_CASE("eps sweep: self comparison, closed form, checkpoint consistency") {
  SUBCASE("eps = [0] gives a single zero row") {
    ExperimentConfig c = small_config();
    c.sweep.epsilons = {0.0};
    const SweepReport r = sweep_eps(c, 1);
    REQUIRE(r.errors.size() == 1u);
    CHECK(r.errors[0][0] == 0.0);
  }

  SUBCASE("linear single mode matches the scalar closed form") {
    ExperimentConfig c = small_config();
    c.nonlinear = false;
    c.T = 0.5;
    c.dt = 1e-4;
    c.record_every = 1;
    c.initial = named_profile("single_mode");
    c.initial.mode = {0, 0, 1};
    c.sweep.epsilons = {1e-1, 1e-2, 1e-3, 1e-4};
    c.sweep.deltas = {1.0, 0.5};
    const SweepReport r = sweep_eps(c, 2);
    const double a0 = c.op.nu * std::numbers::pi * std::numbers::pi;
    const double amp_sq = 0.5;  // |cos(pi z)|^2
    for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
      const double ae = a0 + r.epsilons[i] * std::pow(std::numbers::pi * std::numbers::pi, 1.25);
      for (std::size_t j = 0; j < r.deltas.size(); ++j) {
        const double weight = std::pow(1.0 + std::numbers::pi * std::numbers::pi, 1.0 - r.deltas[j]);
        const double expect = std::sqrt(amp_sq * weight * squared_gap_integral(ae, a0, c.T));
        CHECK(std::abs(r.errors[i][j] - expect) <= 1e-8 * expect);
      }
    }
  }

  SUBCASE("errors recomputed from checkpoints agree") {
    const fs::path out = scratch("sweep");
    ExperimentConfig c = small_config();
    c.sweep.epsilons = {1e-1, 1e-3};
    c.sweep.checkpoints = true;
    const SweepReport online = sweep_eps(c, 2, out);
    const SweepReport stored = sweep_from_checkpoints(out, c.sweep.deltas);
    for (std::size_t i = 0; i < online.errors.size(); ++i) {
      CHECK(std::abs(stored.errors[i][0] - online.errors[i][0]) <= 1e-12 * online.errors[i][0]);
    }
    CHECK(fs::exists(out / "sweep.csv"));
    CHECK(fs::exists(out / "time_derivative.csv"));
  }

  SUBCASE("nu = 0 is rejected") {
    ExperimentConfig c = small_config();
    c.op.nu = 0.0;
    c.sweep.epsilons = {0.1};
    CHECK_THROWS_AS(sweep_eps(c, 1), InvalidArgument);
  }
}

TEST_CASE("stability study") {
  SUBCASE("zero perturbation gives a zero difference series") {
    ExperimentConfig c = small_config();
    c.stability.sizes = {0.0};
    const StabilityReport r = stability_study(c, 1);
    for (double d : r.differences[0].delta_sq) CHECK(d == 0.0);
    CHECK(r.fits[0].c_hat == 0.0);
    CHECK_FALSE(r.fits[0].determinism_violation);
  }
  SUBCASE("linear dynamics scale with lambda^2") {
    ExperimentConfig c = small_config();
    c.nonlinear = false;
    c.stability.sizes = {1e-2, 2e-2};
    const StabilityReport r = stability_study(c, 2);
    const auto& a = r.differences[0];
    const auto& b = r.differences[1];
    for (std::size_t k = 0; k < a.times.size(); ++k) {
      CHECK(b.delta_sq[k] == doctest::Approx(4.0 * a.delta_sq[k]).epsilon(1e-10));
      CHECK(b.dissipation_cum[k] == doctest::Approx(4.0 * a.dissipation_cum[k]).epsilon(1e-10));
    }
    CHECK(r.fits[0].envelope_holds);
    CHECK(r.fits[0].c_hat == 0.0);
  }
}

TEST_CASE("verify writes reports and fails on corrupted weights") {
  const fs::path out = scratch("verify");
  ExperimentConfig c = small_config();
  c.verify.count = 8;
  c.verify.n = 8;
  c.verify.mixed_n = 16;
  const VerifyReport ok = verify_estimates(c, 2, out);
  CHECK(ok.passed());
  CHECK(fs::exists(out / "summary.json"));
  CHECK(fs::exists(out / "ns_estimate_full.csv"));
  c.verify.corrupt = "quarter_as_half";
  CHECK_FALSE(verify_estimates(c, 1).passed());
}

TEST_CASE("outputs are byte-identical across repeated seeded runs") {
  ExperimentConfig c = small_config();
  c.sweep.epsilons = {1e-1, 1e-2};
  c.verify.count = 4;
  c.verify.n = 8;
  c.verify.mixed_n = 8;
  fs::path dirs[2];
  for (int rep = 0; rep < 2; ++rep) {
    dirs[rep] = scratch("det" + std::to_string(rep));
    run_experiment(c, dirs[rep] / "run");
    sweep_eps(c, 1 + rep, dirs[rep] / "sweep");
    stability_study(c, 1 + rep, dirs[rep] / "stability");
    verify_estimates(c, 1 + rep, dirs[rep] / "verify");
  }
  for (const char* f : {"run/ledger.csv", "sweep/sweep.csv", "sweep/time_derivative.csv", "stability/difference.csv",
                        "stability/gronwall.csv", "verify/ns_estimate_full.csv", "verify/interpolation_pe.csv"}) {
    CAPTURE(f);
    const std::string a = slurp(dirs[0] / f);
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(dirs[1] / f));
  }
}
