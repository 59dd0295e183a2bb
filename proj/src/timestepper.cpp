// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/timestepper.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypervisc {

Stepper::Stepper(OperatorSpec op, ForcingSpec forcing, bool nonlinear)
    : op_(op), forcing_(std::move(forcing)), nonlinear_(nonlinear) {
  op_.validate();
}

const std::vector<double>& Stepper::decay(const Grid& g, double dt) const {
  if (dt != cached_dt_ || cached_decay_.size() != g.spectral_size()) {
    cached_decay_.assign(g.spectral_size(), 1.0);
    g.for_each_mode([&](const Mode& m) { cached_decay_[m.index] = std::exp(-op_.symbol(m) * dt); });
    cached_dt_ = dt;
  }
  return cached_decay_;
}

VectorField Stepper::explicit_rhs(const State& s) const {
  VectorField rhs(s.field.grid(), s.field.size());
  if (nonlinear_) {
    rhs = nonlinearity(s);
    rhs *= -1.0;
  }
  if (forcing_.active()) rhs.axpy(forcing_.envelope(s.time), *forcing_.field);
  return rhs;
}

namespace {

void scale_modes(VectorField& f, const std::vector<double>& factor) {
  for (int c = 0; c < f.size(); ++c) {
    auto coeffs = f[c].coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= factor[i];
  }
}

}  // namespace

State Stepper::step(const State& s, double dt) const {
  if (!(dt > 0.0)) throw InvalidArgument("step: dt must be > 0");
  const auto& e = decay(s.field.grid(), dt);
  const bool has_rhs = nonlinear_ || forcing_.active();

  State next{s.equation, s.field, s.time + dt};
  scale_modes(next.field, e);
  if (has_rhs) {
    // Heun in integrating-factor variables:
    //   u*      = E (u + dt R(u, t))
    //   u_{n+1} = E u + dt/2 (E R(u, t) + R(u*, t + dt))
    VectorField r0 = explicit_rhs(s);
    State predictor{s.equation, s.field, s.time + dt};
    predictor.field.axpy(dt, r0);
    scale_modes(predictor.field, e);
    const VectorField r1 = explicit_rhs(predictor);
    scale_modes(r0, e);
    next.field.axpy(0.5 * dt, r0);
    next.field.axpy(0.5 * dt, r1);
  }
  const double energy = norm_sq(next.field);
  if (!std::isfinite(energy)) {
    throw SolverError(fmt::format("non-finite state after step to t = {:.6g}", next.time));
  }
  return next;
}

State step(const State& s, const OperatorSpec& op, const ForcingSpec& forcing, double dt, bool nonlinear) {
  return Stepper(op, forcing, nonlinear).step(s, dt);
}

void EnergyLedger::record(double t, double kin, double diss, double work) {
  double dcum = 0.0;
  double wcum = 0.0;
  if (!times.empty()) {
    const double h = t - times.back();
    dcum = dissipation_cum.back() + 0.5 * h * (dissipation_integrand.back() + diss);
    wcum = work_cum.back() + 0.5 * h * (work_integrand.back() + work);
  }
  times.push_back(t);
  kinetic.push_back(kin);
  dissipation_integrand.push_back(diss);
  work_integrand.push_back(work);
  dissipation_cum.push_back(dcum);
  work_cum.push_back(wcum);
  residual.push_back(kin - kinetic.front() + 2.0 * dcum - 2.0 * wcum);
}

std::string EnergyLedger::csv() const {
  std::string out = "time,kinetic,dissipation_cum,work_cum,energy_residual\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", times[i], kinetic[i], dissipation_cum[i],
                       work_cum[i], residual[i]);
  }
  return out;
}

double dissipation_rate(const OperatorSpec& op, const VectorField& u) {
  double sum = 0.0;
  u.grid().for_each_mode([&](const Mode& m) {
    double mag = 0.0;
    for (int c = 0; c < u.size(); ++c) mag += std::norm(u[c][m.index]);
    if (mag != 0.0) sum += m.multiplicity * op.symbol(m) * mag;
  });
  return sum;
}

long RunConfig::steps() const {
  return static_cast<long>(std::ceil(T / dt - 1e-9));
}

void RunConfig::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("time.T: must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time.dt: must be > 0");
  if (dt > T) throw InvalidArgument("time.dt: must not exceed time.T");
  if (record_every < 1) throw InvalidArgument("time.record_every: must be >= 1");
  if (!(blowup_factor > 1.0)) throw InvalidArgument("time.blowup_factor: must be > 1");
  try {
    op.validate();
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("operator: ") + e.what());
  }
  if (initial.size() != components(equation)) {
    throw InvalidArgument("initial: wrong number of components for the equation");
  }
  try {
    validate_state(State{equation, initial, 0.0}, 1e-10);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("initial: ") + e.what());
  }
  try {
    forcing.validate(equation, initial.grid());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("forcing: ") + e.what());
  }
}

Run::Run(const RunConfig& config)
    : config_(config),
      stepper_(config.op, config.forcing, config.nonlinear),
      state_{config.equation, config.initial, 0.0},
      total_steps_(config.steps()) {
  config_.validate();
  record();
}

void Run::record() {
  const double kin = norm_sq(state_.field);
  const double diss = dissipation_rate(config_.op, state_.field);
  double work = 0.0;
  if (config_.forcing.active()) {
    work = config_.forcing.envelope(state_.time) * inner(*config_.forcing.field, state_.field);
  }
  ledger_.record(state_.time, kin, diss, work);
  if (!config_.forcing.active() && kin > config_.blowup_factor * ledger_.kinetic.front() && kin > 0.0) {
    throw SolverError(fmt::format("blow-up guard: kinetic energy {:.6g} at t = {:.6g} exceeds {:g} x initial {:.6g}",
                                  kin, state_.time, config_.blowup_factor, ledger_.kinetic.front()));
  }
}

const State& Run::advance() {
  if (done()) return state_;
  for (int i = 0; i < config_.record_every && !done(); ++i) {
    ++step_;
    const double t_next = step_ == total_steps_ ? config_.T : static_cast<double>(step_) * config_.dt;
    state_ = stepper_.step(state_, t_next - state_.time);
    state_.time = t_next;
  }
  record();
  return state_;
}

RunResult run(const RunConfig& config, const SnapshotObserver& observer) {
  Run r(config);
  RunResult result;
  const auto emit = [&](const State& s) {
    if (config.keep_snapshots) result.snapshots.push_back(s);
    if (observer) observer(s);
  };
  emit(r.state());
  while (!r.done()) emit(r.advance());
  result.ledger = r.ledger();
  result.steps = r.steps_taken();
  return result;
}

double existence_bound(double r, double C) {
  const double q = r / (4.0 * C);
  const double p = 1.0 / (4.0 * C);
  return std::min({q, q * q, p * p});
}

ExistenceWindowReport existence_window(double u0_norm_sq, double f_norm_sq, double r, double C,
                                       const OperatorSpec& op, const Grid& grid, double T) {
  if (!(r > 0.0) || !(C > 0.0) || !(T > 0.0)) throw InvalidArgument("existence_window: r, C and T must be > 0");
  if (!(u0_norm_sq >= 0.0) || !(f_norm_sq >= 0.0) || !(u0_norm_sq + f_norm_sq > 0.0)) {
    throw InvalidArgument("existence_window: data norms must be >= 0 with a positive sum");
  }
  if (r > 1.0 / (4.0 * C)) throw InvalidArgument("existence_window: requires r <= 1/(4C)");
  op.validate();
  if (!op.elliptic()) throw InvalidArgument("existence_window: operator symbol vanishes at some k != 0");

  ExistenceWindowReport rep;
  rep.r = r;
  rep.C = C;
  rep.B = existence_bound(r, C);
  rep.kmin = std::numeric_limits<double>::infinity();
  rep.Ca = 0.0;
  grid.for_each_mode([&](const Mode& m) {
    if (!m.retained || m.index == 0) return;
    const double a = op.symbol(m);
    rep.kmin = std::min(rep.kmin, a);
    rep.Ca = std::max(rep.Ca, (a + 1.0) / (2.0 * a) * std::exp(-2.0 * a * T));
  });
  rep.C1 = C * std::max(1.0, 2.0 * rep.Ca * rep.kmin);
  rep.window = std::min(rep.B / (4.0 * rep.C1 * (u0_norm_sq + f_norm_sq)), 1.0 / (2.0 * rep.kmin));
  return rep;
}

}  // namespace hypervisc
