// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_TIMESTEPPER_HPP
#define HYPERVISC_TIMESTEPPER_HPP

#include <functional>
#include <string>
#include <vector>

#include "hypervisc/dynamics.hpp"

namespace hypervisc {

/// Integrating-factor Heun scheme for d/dt psi + A psi = -F(psi, psi) + f.
/// The linear part is advanced by exp(-a(k) dt) exactly.
class Stepper {
 public:
  Stepper(OperatorSpec op, ForcingSpec forcing, bool nonlinear = true);

  /// One step of size dt; throws SolverError on non-finite output.
  State step(const State& s, double dt) const;
  /// -F(psi, psi) + f(t), the explicit right-hand side.
  VectorField explicit_rhs(const State& s) const;

  const OperatorSpec& op() const { return op_; }
  const ForcingSpec& forcing() const { return forcing_; }
  bool nonlinear() const { return nonlinear_; }

 private:
  const std::vector<double>& decay(const Grid& g, double dt) const;

  OperatorSpec op_;
  ForcingSpec forcing_;
  bool nonlinear_;
  // single-entry cache of exp(-a(k) dt)
  mutable double cached_dt_ = -1.0;
  mutable std::vector<double> cached_decay_;
};

State step(const State& s, const OperatorSpec& op, const ForcingSpec& forcing, double dt, bool nonlinear = true);

/// Kinetic energy, dissipation and forcing work, sampled at recorded
/// snapshots and integrated in time with the composite trapezoid rule.
struct EnergyLedger {
  std::vector<double> times;
  std::vector<double> kinetic;                // |u|^2
  std::vector<double> dissipation_integrand;  // |A^{1/2} u|^2
  std::vector<double> work_integrand;         // <f, u>
  std::vector<double> dissipation_cum;
  std::vector<double> work_cum;
  std::vector<double> residual;  // kinetic - kinetic0 + 2 dissipation_cum - 2 work_cum

  void record(double t, double kinetic, double dissipation, double work);
  std::size_t size() const { return times.size(); }
  /// Header: time,kinetic,dissipation_cum,work_cum,energy_residual
  std::string csv() const;
};

/// |A^{1/2} u|^2 = sum a(k) |u(k)|^2.
double dissipation_rate(const OperatorSpec& op, const VectorField& u);

struct RunConfig {
  Equation equation = Equation::NavierStokes;
  OperatorSpec op;
  double T = 1.0;
  double dt = 1e-3;
  int record_every = 1;
  ForcingSpec forcing;
  VectorField initial;
  bool nonlinear = true;
  double blowup_factor = 1e3;
  bool keep_snapshots = true;

  const Grid& grid() const { return initial.grid(); }
  long steps() const;
  /// Throws InvalidArgument naming the offending parameter.
  void validate() const;
};

/// Incremental run: advances one recorded snapshot at a time so several
/// runs can be stepped in lockstep without storing trajectories.
class Run {
 public:
  explicit Run(const RunConfig& config);

  bool done() const { return step_ >= total_steps_; }
  /// Advance to the next recorded snapshot (record_every steps or the end).
  const State& advance();
  const State& state() const { return state_; }
  const EnergyLedger& ledger() const { return ledger_; }
  long steps_taken() const { return step_; }
  const Stepper& stepper() const { return stepper_; }

 private:
  void record();

  RunConfig config_;
  Stepper stepper_;
  State state_;
  EnergyLedger ledger_;
  long step_ = 0;
  long total_steps_ = 0;
};

struct RunResult {
  std::vector<State> snapshots;
  EnergyLedger ledger;
  long steps = 0;
};

using SnapshotObserver = std::function<void(const State&)>;

/// Runs to T. Snapshots are kept when config.keep_snapshots is set and are
/// passed to `observer` as they are recorded.
RunResult run(const RunConfig& config, const SnapshotObserver& observer = {});

/// Existence-window calculator for the uniform local-existence step:
///   B   = min{r/4C, (r/4C)^2, (1/4C)^2}
///   kmin = min_{k != 0} a(k)
///   Ca  = max_{k != 0} (a(k)+1)/(2 a(k)) exp(-2 a(k) T)
///   C1  = C max{1, 2 Ca kmin}
///   |I| = min{B / (4 C1 (|u0|^2 + |f|^2)), 1/(2 kmin)}
/// over the retained modes of `grid`.
struct ExistenceWindowReport {
  double r = 0.0;
  double C = 0.0;
  double B = 0.0;
  double kmin = 0.0;
  double Ca = 0.0;
  double C1 = 0.0;
  double window = 0.0;
};

double existence_bound(double r, double C);

ExistenceWindowReport existence_window(double u0_norm_sq, double f_norm_sq, double r, double C,
                                       const OperatorSpec& op, const Grid& grid, double T);

}  // namespace hypervisc

#endif  // HYPERVISC_TIMESTEPPER_HPP
