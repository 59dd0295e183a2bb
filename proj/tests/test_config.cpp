// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "doctest.h"
#include "hypervisc/config.hpp"

using namespace hypervisc;

namespace {

std::string error_of(const std::string& toml) {
  try {
    parse_config(toml);
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("minimal config uses defaults") {
  const ExperimentConfig c = parse_config("");
  CHECK(c.equation == Equation::NavierStokes);
  CHECK(c.n[0] == 16);
  CHECK(c.op.variant == Variant::FullHyper);
  CHECK(c.op.l == 1.25);
  CHECK(c.initial.kind == "taylor_green");
  const RunConfig rc = make_run_config(c);
  CHECK(rc.steps() == 100);
}

TEST_CASE("full config parses") {
  const ExperimentConfig c = parse_config(R"(
seed = 7
equation = "pe"
nonlinear = false
[grid]
n = [16, 8, 12]
dealias = "1/2"
[operator]
variant = "horizontal"
nu = 0.1
epsilon = 0.01
l = "2/1"
[time]
T = 0.5
dt = 1e-3
record_every = 10
[initial]
profile = "single_mode"
mode = [1, 0, 1]
amplitude = 0.5
[forcing]
kind = "modulated"
profile = "random"
omega = 2.0
seed = 4
[sweep]
epsilons = [0.1, 0.01, 0]
deltas = [1.0, 0.5]
[stability]
sizes = [1e-2, 1e-3]
[verify]
count = 10
)");
  CHECK(c.seed == 7);
  CHECK(c.equation == Equation::Primitive);
  CHECK(c.n[1] == 8);
  CHECK(c.dealias == Rational{1, 2});
  CHECK(c.op.l == 2.0);
  CHECK(c.initial.mode == WaveIndex{1, 0, 1});
  CHECK(c.forcing_kind == "modulated");
  CHECK(c.seed_for(c.forcing) == 4);
  CHECK(c.seed_for(c.initial) == 7);
  CHECK(c.sweep.epsilons.size() == 3u);
  CHECK(c.verify.count == 10);
  const RunConfig rc = make_run_config(c);
  CHECK(rc.forcing.kind == ForcingSpec::Kind::Modulated);
  CHECK_FALSE(rc.nonlinear);
}

TEST_CASE("config errors name the offending key") {
  CHECK(error_of("[time]\ndt = 0").find("time.dt") != std::string::npos);
  CHECK(error_of("[time]\ndt = -1e-3").find("time.dt") != std::string::npos);
  CHECK(error_of("[time]\nT = 0").find("time.T") != std::string::npos);
  CHECK(error_of("[grid]\nn = 7").find("grid") != std::string::npos);
  CHECK(error_of("[grid]\nn = \"big\"").find("grid.n") != std::string::npos);
  CHECK(error_of("[operator]\nnu = -1").find("operator") != std::string::npos);
  CHECK(error_of("[operator]\nvariant = \"horizontal\"\nnu = 0\nepsilon = 1").find("operator.nu") !=
        std::string::npos);
  CHECK(error_of("[operator]\nl = \"five\"").find("operator.l") != std::string::npos);
  CHECK(error_of("[sweep]\nepsilons = [0.01, 0.1]").find("sweep.epsilons") != std::string::npos);
  CHECK(error_of("[sweep]\nepsilons = [0.1, -0.1]").find("sweep.epsilons") != std::string::npos);
  CHECK(error_of("[sweep]\ndeltas = [0]").find("sweep.deltas") != std::string::npos);
  CHECK(error_of("[time]\ndtt = 1").find("time.dtt") != std::string::npos);
  CHECK(error_of("equation = \"euler\"").find("equation") != std::string::npos);
  CHECK(error_of("[initial]\nprofile = \"vortex\"").find("initial.profile") != std::string::npos);
  CHECK(error_of("[initial]\nprofile = \"checkpoint\"").find("initial.path") != std::string::npos);
  CHECK(error_of("[forcing]\nkind = \"steady\"").find("forcing.profile") != std::string::npos);
  CHECK(error_of("[verify]\ncorrupt = \"maybe\"").find("verify.corrupt") != std::string::npos);
  CHECK(error_of("[time\n").find("config") != std::string::npos);
}

TEST_CASE("profiles incompatible with the equation are rejected") {
  ExperimentConfig c = parse_config("equation = \"pe\"\n[initial]\nprofile = \"beltrami\"");
  CHECK_THROWS_AS(make_run_config(c), InvalidArgument);
  c = parse_config("[initial]\nprofile = \"single_mode\"\nmode = [9, 0, 0]");
  CHECK_THROWS_AS(make_run_config(c), InvalidArgument);
}

TEST_CASE("load_config resolves missing files") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.toml"), InvalidArgument);
}
