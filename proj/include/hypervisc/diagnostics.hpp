// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_DIAGNOSTICS_HPP
#define HYPERVISC_DIAGNOSTICS_HPP

#include <span>
#include <string>
#include <vector>

#include "hypervisc/timestepper.hpp"

namespace hypervisc {

enum class TimeExponent { L2, Linf };

/// Accumulates a space-time norm one snapshot at a time: trapezoid rule of
/// the squared space norm (L2 in time) or its maximum (L-infinity).
class TrajectoryNormAccumulator {
 public:
  TrajectoryNormAccumulator(NormSpec space, TimeExponent time) : space_(std::move(space)), time_(time) {}
  void add(const State& s);
  /// Adds a precomputed squared space norm at time t.
  void add_value(double t, double norm_sq);
  double value() const;

 private:
  NormSpec space_;
  TimeExponent time_;
  double last_t_ = 0.0;
  double last_sq_ = 0.0;
  double acc_ = 0.0;
  bool started_ = false;
  const Grid* grid_ = nullptr;
};

/// Space-time norm of a recorded trajectory. Snapshots must share a grid.
double trajectory_norm(std::span<const State> traj, const NormSpec& space, TimeExponent time);

/// |delta(t)|^2 and int_0^t |A^{1/2} delta|^2 for delta = a - b.
struct DifferenceSeries {
  std::vector<double> times;
  std::vector<double> delta_sq;
  std::vector<double> dissipation_cum;
};

/// Online version of difference_study for runs advanced in lockstep.
class DifferenceTracker {
 public:
  explicit DifferenceTracker(OperatorSpec op) : op_(std::move(op)) {}
  void add(const State& a, const State& b);
  const DifferenceSeries& series() const { return series_; }

 private:
  OperatorSpec op_;
  DifferenceSeries series_;
  double last_rate_ = 0.0;
};

DifferenceSeries difference_study(std::span<const State> a, std::span<const State> b, const OperatorSpec& op);

/// Smallest C >= 0 with |delta(t)|^2 <= |delta(0)|^2 exp(C int_0^t (|u_s|^2_{D(A^{1/2})} + 1))
/// at every snapshot, found by bisection.
struct GronwallFit {
  double c_hat = 0.0;
  bool envelope_holds = true;
  double sup_ratio = 0.0;  // sup_t |delta(t)| / |delta(0)|
  bool determinism_violation = false;
};

/// `base_graph_sq[i]` is |u_s(t_i)|^2 in the GraphPower(1/2) norm.
GronwallFit gronwall_fit(const DifferenceSeries& diff, std::span<const double> base_graph_sq,
                         double tolerance = 1e-14);

/// d/dt u = -A u - F(u, u) + f(t) evaluated at a snapshot.
VectorField time_derivative(const State& s, const OperatorSpec& op, const ForcingSpec& forcing, bool nonlinear = true);

/// Default Sobolev order of the negative-norm time-derivative diagnostic.
constexpr double kTimeDerivativeOrder = 2.6;

/// |f|^2_{L2(0,T; D(A^{-1/2}))} for a steady or cos-modulated forcing.
double forcing_dual_norm_sq(const OperatorSpec& op, const ForcingSpec& forcing, double T);

/// Energy estimate |u|^2_{Linf L2} + |A^{1/2} u|^2_{L2 L2} <= C (|u0|^2 + |f|^2_{L2 D(A^{-1/2})})
/// evaluated from a ledger. `balance_constant` uses max_t (|u(t)|^2 + 2 int_0^t |A^{1/2}u|^2)
/// as the left side, which is at most 1 for exact unforced solutions.
struct EnergyEstimate {
  double sup_kinetic = 0.0;
  double dissipation = 0.0;
  double data = 0.0;
  double constant = 0.0;
  double balance_constant = 0.0;
};

EnergyEstimate energy_estimate(const EnergyLedger& ledger, const OperatorSpec& op, const ForcingSpec& forcing);

}  // namespace hypervisc

#endif  // HYPERVISC_DIAGNOSTICS_HPP
