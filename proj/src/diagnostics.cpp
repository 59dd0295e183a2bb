// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace hypervisc {

void TrajectoryNormAccumulator::add(const State& s) {
  if (grid_ != nullptr && !(*grid_ == s.field.grid())) {
    throw InvalidArgument("trajectory snapshots live on different grids");
  }
  grid_ = &s.field.grid();
  add_value(s.time, graph_norm_sq(space_, s.field));
}

void TrajectoryNormAccumulator::add_value(double t, double norm_sq) {
  if (time_ == TimeExponent::Linf) {
    acc_ = std::max(acc_, norm_sq);
  } else if (started_) {
    if (t < last_t_) throw InvalidArgument("trajectory times must be nondecreasing");
    acc_ += 0.5 * (t - last_t_) * (last_sq_ + norm_sq);
  }
  started_ = true;
  last_t_ = t;
  last_sq_ = norm_sq;
}

double TrajectoryNormAccumulator::value() const { return std::sqrt(acc_); }

double trajectory_norm(std::span<const State> traj, const NormSpec& space, TimeExponent time) {
  TrajectoryNormAccumulator acc(space, time);
  for (const State& s : traj) acc.add(s);
  return acc.value();
}

void DifferenceTracker::add(const State& a, const State& b) {
  require_same_shape(a.field, b.field);
  if (a.equation != b.equation) throw InvalidArgument("difference_study: runs solve different equations");
  if (std::abs(a.time - b.time) > 1e-12 * std::max(1.0, std::abs(a.time))) {
    throw InvalidArgument("difference_study: snapshot times differ");
  }
  const VectorField delta = a.field - b.field;
  const double rate = dissipation_rate(op_, delta);
  double cum = 0.0;
  if (!series_.times.empty()) {
    cum = series_.dissipation_cum.back() + 0.5 * (a.time - series_.times.back()) * (last_rate_ + rate);
  }
  series_.times.push_back(a.time);
  series_.delta_sq.push_back(norm_sq(delta));
  series_.dissipation_cum.push_back(cum);
  last_rate_ = rate;
}

DifferenceSeries difference_study(std::span<const State> a, std::span<const State> b, const OperatorSpec& op) {
  if (a.size() != b.size()) throw InvalidArgument("difference_study: trajectories differ in length");
  DifferenceTracker tracker(op);
  for (std::size_t i = 0; i < a.size(); ++i) tracker.add(a[i], b[i]);
  return tracker.series();
}

GronwallFit gronwall_fit(const DifferenceSeries& diff, std::span<const double> base_graph_sq, double tolerance) {
  const auto& t = diff.times;
  if (base_graph_sq.size() != t.size()) throw InvalidArgument("gronwall_fit: series lengths differ");
  GronwallFit fit;
  if (t.empty()) return fit;

  // exponent(t) = int_0^t (|u_s|^2_{D(A^{1/2})} + 1)
  std::vector<double> exponent(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    exponent[i] = exponent[i - 1] + 0.5 * (t[i] - t[i - 1]) * (base_graph_sq[i - 1] + base_graph_sq[i] + 2.0);
  }

  const double d0 = diff.delta_sq.front();
  if (d0 == 0.0) {
    for (double d : diff.delta_sq) {
      if (d > tolerance) fit.determinism_violation = true;
    }
    fit.envelope_holds = !fit.determinism_violation;
    return fit;
  }

  const auto holds = [&](double c) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (diff.delta_sq[i] > d0 * std::exp(c * exponent[i]) * (1.0 + 1e-12)) return false;
    }
    return true;
  };

  for (double d : diff.delta_sq) fit.sup_ratio = std::max(fit.sup_ratio, std::sqrt(d / d0));
  if (!holds(0.0)) {
    // Feasibility is monotone in C; bracket, then bisect.
    double lo = 0.0;
    double hi = 1.0;
    while (!holds(hi)) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) {
        fit.envelope_holds = false;
        fit.c_hat = hi;
        return fit;
      }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (holds(mid) ? hi : lo) = mid;
    }
    fit.c_hat = hi;
  }
  fit.envelope_holds = holds(fit.c_hat);
  return fit;
}

VectorField time_derivative(const State& s, const OperatorSpec& op, const ForcingSpec& forcing, bool nonlinear) {
  VectorField out = apply_operator(op, s.field, 1.0);
  out *= -1.0;
  if (nonlinear) out -= nonlinearity(s);
  if (forcing.active()) out.axpy(forcing.envelope(s.time), *forcing.field);
  return out;
}

double forcing_dual_norm_sq(const OperatorSpec& op, const ForcingSpec& forcing, double T) {
  if (!forcing.active()) return 0.0;
  const double spatial = norm_sq(apply_operator(op, *forcing.field, -0.5, ZeroModePolicy::Drop));
  if (forcing.kind == ForcingSpec::Kind::Steady || forcing.omega == 0.0) return spatial * T;
  const double w = forcing.omega;
  return spatial * (0.5 * T + std::sin(2.0 * w * T) / (4.0 * w));
}

EnergyEstimate energy_estimate(const EnergyLedger& ledger, const OperatorSpec& op, const ForcingSpec& forcing) {
  EnergyEstimate e;
  if (ledger.size() == 0) return e;
  double balance = 0.0;
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    e.sup_kinetic = std::max(e.sup_kinetic, ledger.kinetic[i]);
    balance = std::max(balance, ledger.kinetic[i] + 2.0 * ledger.dissipation_cum[i]);
  }
  e.dissipation = ledger.dissipation_cum.back();
  e.data = ledger.kinetic.front() + forcing_dual_norm_sq(op, forcing, ledger.times.back() - ledger.times.front());
  if (e.data > 0.0) {
    e.constant = (e.sup_kinetic + e.dissipation) / e.data;
    e.balance_constant = balance / e.data;
  }
  return e;
}

}  // namespace hypervisc
