// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "hypervisc/profiles.hpp"
#include "hypervisc/timestepper.hpp"

using namespace hypervisc;

namespace {

RunConfig linear_config(const Grid& g, Equation eq, const OperatorSpec& op, const WaveIndex& k) {
  RunConfig rc;
  rc.equation = eq;
  rc.op = op;
  rc.T = 0.1;
  rc.dt = 1e-4;
  rc.record_every = 100;
  rc.nonlinear = false;
  rc.initial = single_mode(g, eq, k, 1.0);
  return rc;
}

bool message_has(const RunConfig& rc, const std::string& key) {
  try {
    rc.validate();
  } catch (const InvalidArgument& e) {
    return std::string(e.what()).find(key) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("linear single-mode runs decay exactly for every variant") {
  const Grid g(16, 16, 16);
  const WaveIndex k{1, 2, 3};
  const OperatorSpec ops[] = {{Variant::FullHyper, 0.1, 0.01, 1.25},
                              {Variant::FullHyper, 0.1, 0.01, 1.6},
                              {Variant::HorizontalHyper, 0.1, 0.01, 2.0},
                              {Variant::FullHyper, 0.0, 0.02, 1.25}};
  for (const auto& op : ops) {
    for (Equation eq : {Equation::NavierStokes, Equation::Primitive}) {
      const RunConfig rc = linear_config(g, eq, op, k);
      const RunResult r = run(rc);
      CHECK(r.steps == 1000);
      const double decay = std::exp(-symbol(op, k) * rc.T);
      const VectorField expect = decay * rc.initial;
      const double err = std::sqrt(norm_sq(r.snapshots.back().field - expect) / norm_sq(expect));
      CHECK(err <= 1e-12);
    }
  }
}

TEST_CASE("Beltrami flow decays exponentially under the full nonlinear dynamics") {
  const Grid g(16, 16, 16);
  RunConfig rc;
  rc.op = {Variant::FullHyper, 0.05, 0.01, 1.25};
  rc.T = 0.5;
  rc.dt = 1e-3;
  rc.record_every = 50;
  rc.initial = beltrami_field(g, 1.0);
  const RunResult r = run(rc);
  const double a = symbol(rc.op, WaveIndex{1, 0, 0});
  const VectorField expect = std::exp(-a * rc.T) * rc.initial;
  CHECK(std::sqrt(norm_sq(r.snapshots.back().field - expect) / norm_sq(expect)) <= 1e-6);
}

TEST_CASE("ledger bookkeeping") {
  const Grid g(8, 8, 8);
  RunConfig rc = linear_config(g, Equation::NavierStokes, {Variant::FullHyper, 0.1, 0.0, 1.25}, {1, 0, 0});
  rc.T = 0.01;
  rc.dt = 1e-3;
  rc.record_every = 3;
  const RunResult r = run(rc);
  CHECK(r.steps == 10);
  CHECK(r.ledger.size() == 5u);  // t = 0, 3, 6, 9 steps and the final step
  CHECK(r.ledger.times.back() == doctest::Approx(0.01).epsilon(1e-15));
  const std::string csv = r.ledger.csv();
  CHECK(csv.rfind("time,kinetic,dissipation_cum,work_cum,energy_residual\n", 0) == 0);

  rc.record_every = 1;
  CHECK(run(rc).ledger.size() == 11u);
}

TEST_CASE("last step is shortened to land on T") {
  const Grid g(8, 8, 8);
  RunConfig rc = linear_config(g, Equation::NavierStokes, {Variant::FullHyper, 1.0, 0.0, 1.25}, {0, 0, 1});
  rc.T = 0.0105;
  rc.dt = 1e-3;
  rc.record_every = 1;
  const RunResult r = run(rc);
  CHECK(r.steps == 11);
  CHECK(r.snapshots.back().time == doctest::Approx(0.0105).epsilon(1e-15));
  const double decay = std::exp(-symbol(rc.op, WaveIndex{0, 0, 1}) * rc.T);
  CHECK(r.snapshots.back().field[1].coeff({0, 0, 1}).real() == doctest::Approx(0.5 * decay).epsilon(1e-13));
}

TEST_CASE("energy residual converges at second order") {
  const Grid g(16, 16, 16);
  double prev = 0.0;
  for (double dt : {2e-3, 1e-3, 5e-4}) {
    RunConfig rc;
    rc.op = {Variant::FullHyper, 0.05, 0.01, 1.25};
    rc.T = 0.2;
    rc.dt = dt;
    rc.initial = taylor_green_ns(g, 1.0);
    rc.forcing = ForcingSpec::steady(beltrami_field(g, 0.5));
    rc.keep_snapshots = false;
    const double res = std::abs(run(rc).ledger.residual.back());
    if (prev > 0.0) {
      CHECK(prev / res > 3.5);
      CHECK(prev / res < 4.5);
    }
    prev = res;
  }
}

TEST_CASE("run configuration errors name the offending key") {
  const Grid g(8, 8, 8);
  RunConfig rc = linear_config(g, Equation::NavierStokes, {Variant::FullHyper, 0.1, 0.0, 1.25}, {1, 0, 0});
  rc.dt = 0.0;
  CHECK(message_has(rc, "time.dt"));
  rc.dt = -1.0;
  CHECK(message_has(rc, "time.dt"));
  rc.dt = 1e-3;
  rc.T = -1.0;
  CHECK(message_has(rc, "time.T"));
  rc.T = 0.1;
  rc.record_every = 0;
  CHECK(message_has(rc, "time.record_every"));
  rc.record_every = 1;
  rc.op.nu = -1.0;
  CHECK(message_has(rc, "operator"));
  rc.op.nu = 0.1;
  rc.initial = VectorField(g, 2);
  CHECK(message_has(rc, "initial"));
}

TEST_CASE("blow-up guard and non-finite detection") {
  const Grid g(8, 8, 8);
  RunConfig rc = linear_config(g, Equation::NavierStokes, {Variant::FullHyper, 0.1, 0.0, 1.25}, {1, 0, 0});
  rc.nonlinear = true;
  rc.initial *= 1e6;  // violent nonlinear dynamics
  rc.initial += 1e6 * random_field(g, Constraint::Solenoidal3D, 0.5, 1);
  rc.T = 1.0;
  rc.dt = 1e-2;
  rc.blowup_factor = 10.0;
  CHECK_THROWS_AS(run(rc), SolverError);
}

TEST_CASE("existence window") {
  const Grid g(8, 8, 8);
  const OperatorSpec op{Variant::FullHyper, 1.0, 0.0, 1.25};
  CHECK(existence_bound(0.25, 1.0) == doctest::Approx(1.0 / 256.0));
  const auto rep = existence_window(2.0, 0.0, 0.25, 1.0, op, g, 1.0);
  const double kmin = std::numbers::pi * std::numbers::pi;  // a(0,0,1) = pi^2 is the smallest
  CHECK(rep.kmin == doctest::Approx(kmin));
  CHECK(rep.B == doctest::Approx(1.0 / 256.0));
  double ca = 0.0;
  g.for_each_mode([&](const Mode& m) {
    if (!m.retained || m.index == 0) return;
    const double a = op.symbol(m);
    ca = std::max(ca, (a + 1.0) / (2.0 * a) * std::exp(-2.0 * a));
  });
  CHECK(rep.Ca == doctest::Approx(ca));
  const double c1 = std::max(1.0, 2.0 * ca * kmin);
  CHECK(rep.window == doctest::Approx(std::min(rep.B / (4.0 * c1 * 2.0), 1.0 / (2.0 * kmin))));
  CHECK_THROWS_AS(existence_window(1.0, 0.0, 0.0, 1.0, op, g, 1.0), InvalidArgument);
  CHECK_THROWS_AS(existence_window(1.0, 0.0, 0.5, 1.0, op, g, 1.0), InvalidArgument);  // r > 1/(4C)
  CHECK_THROWS_AS(existence_window(-1.0, 0.0, 0.25, 1.0, op, g, 1.0), InvalidArgument);
  CHECK_THROWS_AS(existence_window(0.0, 0.0, 0.25, 1.0, op, g, 1.0), InvalidArgument);
  CHECK_THROWS_AS(existence_window(1.0, 0.0, 0.25, 1.0, op, g, 0.0), InvalidArgument);
}
