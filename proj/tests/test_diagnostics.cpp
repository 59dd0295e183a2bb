// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "hypervisc/diagnostics.hpp"
#include "hypervisc/profiles.hpp"

using namespace hypervisc;

namespace {

RunConfig base_config(const Grid& g, bool nonlinear) {
  RunConfig rc;
  rc.op = {Variant::FullHyper, 0.05, 0.01, 1.25};
  rc.T = 0.1;
  rc.dt = 1e-3;
  rc.record_every = 5;
  rc.nonlinear = nonlinear;
  rc.initial = random_field(g, Constraint::Solenoidal3D, 2.0, 8);
  return rc;
}

}  // namespace

TEST_CASE("trajectory norms") {
  const Grid g(8, 8, 8);
  std::vector<State> zero{State{Equation::NavierStokes, VectorField(g, 3), 0.0},
                          State{Equation::NavierStokes, VectorField(g, 3), 1.0}};
  CHECK(trajectory_norm(zero, NormSpec::sobolev(0.0), TimeExponent::L2) == 0.0);

  // cos(2 pi x) y_hat has mean square 1/2: |u|^2 = a^2 / 2
  const VectorField u = single_mode(g, Equation::NavierStokes, {1, 0, 0}, std::sqrt(2.0));
  std::vector<State> constant;
  for (int i = 0; i <= 10; ++i) constant.push_back(State{Equation::NavierStokes, u, 0.1 * i});
  CHECK(trajectory_norm(constant, NormSpec::sobolev(0.0), TimeExponent::L2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trajectory_norm(constant, NormSpec::sobolev(0.0), TimeExponent::Linf) ==
        doctest::Approx(1.0).epsilon(1e-14));

  std::vector<State> mixed{State{Equation::NavierStokes, VectorField(g, 3), 0.0},
                           State{Equation::NavierStokes, u, 0.5}};
  CHECK_NOTHROW(trajectory_norm(mixed, NormSpec::sobolev(0.0), TimeExponent::L2));
  mixed.push_back(State{Equation::NavierStokes, VectorField(Grid(8, 8, 16), 3), 1.0});
  CHECK_THROWS_AS(trajectory_norm(mixed, NormSpec::sobolev(0.0), TimeExponent::L2), InvalidArgument);
}

TEST_CASE("trajectory norm agrees with the energy ledger") {
  const Grid g(16, 16, 16);
  const RunResult r = run(base_config(g, true));
  const double l2 = trajectory_norm(r.snapshots, NormSpec::sobolev(0.0), TimeExponent::L2);
  double integral = 0.0;
  for (std::size_t i = 1; i < r.ledger.size(); ++i) {
    integral += 0.5 * (r.ledger.times[i] - r.ledger.times[i - 1]) * (r.ledger.kinetic[i] + r.ledger.kinetic[i - 1]);
  }
  CHECK(l2 == doctest::Approx(std::sqrt(integral)).epsilon(1e-12));
  const double linf = trajectory_norm(r.snapshots, NormSpec::sobolev(0.0), TimeExponent::Linf);
  CHECK(linf >= l2 / std::sqrt(0.1));
}

TEST_CASE("difference study") {
  const Grid g(16, 16, 16);
  const RunConfig rc = base_config(g, false);
  const RunResult a = run(rc);

  SUBCASE("identical runs give zero") {
    const auto d = difference_study(a.snapshots, a.snapshots, rc.op);
    for (double v : d.delta_sq) CHECK(v == 0.0);
    for (double v : d.dissipation_cum) CHECK(v == 0.0);
  }

  SUBCASE("linear dynamics scale with lambda^2 and the study is symmetric") {
    const VectorField p = random_field(g, Constraint::Solenoidal3D, 1.0, 77);
    RunConfig r1 = rc;
    r1.initial.axpy(1e-3, p);
    RunConfig r2 = rc;
    r2.initial.axpy(2e-3, p);
    const RunResult b1 = run(r1);
    const RunResult b2 = run(r2);
    const auto d1 = difference_study(b1.snapshots, a.snapshots, rc.op);
    const auto d2 = difference_study(b2.snapshots, a.snapshots, rc.op);
    const auto d1s = difference_study(a.snapshots, b1.snapshots, rc.op);
    for (std::size_t i = 0; i < d1.times.size(); ++i) {
      CHECK(d2.delta_sq[i] == doctest::Approx(4.0 * d1.delta_sq[i]).epsilon(1e-9));
      CHECK(d2.dissipation_cum[i] == doctest::Approx(4.0 * d1.dissipation_cum[i]).epsilon(1e-9));
      CHECK(d1s.delta_sq[i] == d1.delta_sq[i]);
      CHECK(d1s.dissipation_cum[i] == d1.dissipation_cum[i]);
    }
    // linear dynamics: delta decays, so the envelope holds with C = 0
    std::vector<double> base(d1.times.size(), 1.0);
    const GronwallFit fit = gronwall_fit(d1, base);
    CHECK(fit.c_hat == 0.0);
    CHECK(fit.envelope_holds);
  }

  SUBCASE("mismatched runs are rejected") {
    std::vector<State> shorter(a.snapshots.begin(), a.snapshots.end() - 1);
    CHECK_THROWS_AS(difference_study(a.snapshots, shorter, rc.op), InvalidArgument);
  }
}

TEST_CASE("Gronwall fit on synthetic series") {
  DifferenceSeries d;
  std::vector<double> base;
  for (int i = 0; i <= 20; ++i) {
    const double t = 0.05 * i;
    d.times.push_back(t);
    d.delta_sq.push_back(1e-4 * std::exp(3.0 * t));
    d.dissipation_cum.push_back(0.0);
    base.push_back(0.0);  // exponent = t exactly under the trapezoid rule
  }
  const GronwallFit fit = gronwall_fit(d, base);
  CHECK(fit.c_hat == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.envelope_holds);
  CHECK(fit.sup_ratio == doctest::Approx(std::exp(1.5)).epsilon(1e-12));

  DifferenceSeries zero = d;
  for (auto& v : zero.delta_sq) v = 0.0;
  CHECK(gronwall_fit(zero, base).c_hat == 0.0);
  CHECK_FALSE(gronwall_fit(zero, base).determinism_violation);
  zero.delta_sq.back() = 1e-6;
  CHECK(gronwall_fit(zero, base).determinism_violation);
  CHECK_THROWS_AS(gronwall_fit(d, std::vector<double>(3, 0.0)), InvalidArgument);
}

TEST_CASE("energy estimate with zero forcing") {
  const Grid g(16, 16, 16);
  RunConfig rc = base_config(g, true);
  rc.record_every = 1;
  const RunResult r = run(rc);
  const EnergyEstimate e = energy_estimate(r.ledger, rc.op, rc.forcing);
  CHECK(e.data == r.ledger.kinetic.front());
  CHECK(e.sup_kinetic <= e.data * (1.0 + 1e-10));
  // |u(t)|^2 + 2 int |A^{1/2} u|^2 = |u0|^2 up to the ledger residual
  double worst = 0.0;
  for (double res : r.ledger.residual) worst = std::max(worst, res);
  CHECK(e.balance_constant <= 1.0 + worst / e.data + 1e-12);
  CHECK(e.constant >= 1.0);
  CHECK(e.constant <= 1.5 + worst / e.data + 1e-12);
}

TEST_CASE("forcing dual norm") {
  const Grid g(8, 8, 8);
  const OperatorSpec op{Variant::FullHyper, 1.0, 0.0, 1.25};
  const VectorField f = single_mode(g, Equation::NavierStokes, {1, 0, 0}, std::sqrt(2.0));
  const double a = symbol(op, WaveIndex{1, 0, 0});
  CHECK(forcing_dual_norm_sq(op, ForcingSpec::steady(f), 2.0) == doctest::Approx(2.0 / a));
  const double w = 3.0;
  CHECK(forcing_dual_norm_sq(op, ForcingSpec::modulated(f, w), 2.0) ==
        doctest::Approx((1.0 + std::sin(4.0 * w) / (4.0 * w)) / a));
  CHECK(forcing_dual_norm_sq(op, ForcingSpec::none(), 2.0) == 0.0);
}

TEST_CASE("time derivative of a linear single mode") {
  const Grid g(8, 8, 8);
  const OperatorSpec op{Variant::FullHyper, 0.3, 0.1, 1.25};
  const VectorField u = single_mode(g, Equation::NavierStokes, {1, 1, 1}, 1.0);
  const VectorField d = time_derivative(State{Equation::NavierStokes, u, 0.0}, op, ForcingSpec::none(), false);
  CHECK(std::sqrt(norm_sq(d + symbol(op, WaveIndex{1, 1, 1}) * u)) <= 1e-13);
}
