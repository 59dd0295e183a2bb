// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/config.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hypervisc/checkpoint.hpp"
#include "toml.hpp"

namespace hypervisc {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) { throw InvalidArgument(key + ": " + what); }

// Typed access to one TOML table; every error names the full dotted key.
class Section {
 public:
  Section(const toml::table* table, std::string prefix) : table_(table), prefix_(std::move(prefix)) {}

  std::string key(std::string_view name) const {
    return prefix_.empty() ? std::string(name) : prefix_ + "." + std::string(name);
  }

  const toml::node* find(std::string_view name) const { return table_ ? table_->get(name) : nullptr; }

  void allow(std::initializer_list<std::string_view> names) const {
    if (!table_) return;
    const std::set<std::string_view> ok(names);
    for (const auto& [k, v] : *table_) {
      if (!ok.contains(k.str())) fail(key(k.str()), "unknown key");
    }
  }

  Section sub(std::string_view name) const {
    const toml::node* n = find(name);
    if (n && !n->is_table()) fail(key(name), "expected a table");
    return Section(n ? n->as_table() : nullptr, key(name));
  }

  void read(std::string_view name, double& out) const {
    if (const auto* n = find(name)) {
      const auto v = n->value<double>();
      if (!v || !std::isfinite(*v)) fail(key(name), "expected a finite number");
      out = *v;
    }
  }

  void read(std::string_view name, int& out) const {
    if (const auto* n = find(name)) {
      const auto v = n->value_exact<std::int64_t>();
      if (!v || *v < INT32_MIN || *v > INT32_MAX) fail(key(name), "expected an integer");
      out = static_cast<int>(*v);
    }
  }

  void read(std::string_view name, std::uint64_t& out) const {
    if (const auto* n = find(name)) {
      const auto v = n->value_exact<std::int64_t>();
      if (!v || *v < 0) fail(key(name), "expected a nonnegative integer");
      out = static_cast<std::uint64_t>(*v);
    }
  }

  void read(std::string_view name, std::optional<std::uint64_t>& out) const {
    if (find(name)) {
      std::uint64_t v = 0;
      read(name, v);
      out = v;
    }
  }

  void read(std::string_view name, bool& out) const {
    if (const auto* n = find(name)) {
      const auto v = n->value_exact<bool>();
      if (!v) fail(key(name), "expected true or false");
      out = *v;
    }
  }

  void read(std::string_view name, std::string& out) const {
    if (const auto* n = find(name)) {
      const auto v = n->value_exact<std::string>();
      if (!v) fail(key(name), "expected a string");
      out = *v;
    }
  }

  void read(std::string_view name, std::vector<double>& out) const {
    if (const auto* n = find(name)) {
      const auto* arr = n->as_array();
      if (!arr) fail(key(name), "expected an array of numbers");
      out.clear();
      for (const auto& e : *arr) {
        const auto v = e.value<double>();
        if (!v || !std::isfinite(*v)) fail(key(name), "expected an array of numbers");
        out.push_back(*v);
      }
    }
  }

  // Number or "p/q" string.
  void read_fraction(std::string_view name, double& out) const {
    if (const auto* n = find(name)) {
      if (const auto s = n->value_exact<std::string>()) {
        try {
          out = Rational::parse(*s).value();
        } catch (const InvalidArgument&) {
          fail(key(name), "expected a number or a fraction \"p/q\"");
        }
      } else {
        read(name, out);
      }
    }
  }

 private:
  const toml::table* table_;
  std::string prefix_;
};

FieldProfile read_profile(const Section& s, const fs::path& base, FieldProfile p, bool forcing = false) {
  if (forcing) {
    s.allow({"profile", "amplitude", "seed", "spectrum_profile", "mode", "path", "kind", "omega"});
  } else {
    s.allow({"profile", "amplitude", "seed", "spectrum_profile", "mode", "path"});
  }
  s.read("profile", p.kind);
  s.read("amplitude", p.amplitude);
  s.read("seed", p.seed);
  s.read("spectrum_profile", p.spectrum_profile);
  if (const auto* n = s.find("mode")) {
    const auto* arr = n->as_array();
    if (!arr || arr->size() != 3) fail(s.key("mode"), "expected [k1, k2, k3]");
    int k[3];
    for (std::size_t i = 0; i < 3; ++i) {
      const auto v = (*arr)[i].value_exact<std::int64_t>();
      if (!v) fail(s.key("mode"), "expected integer wave indices");
      k[i] = static_cast<int>(*v);
    }
    p.mode = {k[0], k[1], k[2]};
  }
  std::string path;
  s.read("path", path);
  if (!path.empty()) p.path = fs::path(path).is_absolute() ? fs::path(path) : base / path;
  static const std::set<std::string> kinds{"none",   "beltrami", "taylor_green", "baroclinic",
                                           "single_mode", "random", "checkpoint"};
  if (!kinds.contains(p.kind)) fail(s.key("profile"), "unknown profile '" + p.kind + "'");
  if (p.kind == "checkpoint" && p.path.empty()) fail(s.key("path"), "required for profile = \"checkpoint\"");
  return p;
}

}  // namespace

Grid ExperimentConfig::grid() const { return Grid(n[0], n[1], n[2], dealias); }

void ExperimentConfig::validate() const {
  try {
    (void)grid();
  } catch (const InvalidArgument& e) {
    fail("grid", e.what());
  }
  try {
    op.validate();
  } catch (const InvalidArgument& e) {
    fail("operator", e.what());
  }
  if (op.variant == Variant::HorizontalHyper && !(op.nu > 0.0)) {
    fail("operator.nu", "the horizontal variant needs nu > 0");
  }
  if (!(T > 0.0)) fail("time.T", "must be > 0");
  if (!(dt > 0.0)) fail("time.dt", "must be > 0");
  if (dt > T) fail("time.dt", "must not exceed time.T");
  if (record_every < 1) fail("time.record_every", "must be >= 1");
  if (!(blowup_factor > 1.0)) fail("time.blowup_factor", "must be > 1");
  if (forcing_kind != "none" && forcing_kind != "steady" && forcing_kind != "modulated") {
    fail("forcing.kind", "expected none, steady or modulated");
  }
  if (forcing_kind != "none" && forcing.kind == "none") fail("forcing.profile", "required when forcing is active");
  if (initial.kind == "none") fail("initial.profile", "required");
  if (output.checkpoint_every < 0) fail("output.checkpoint_every", "must be >= 0");
  if (!(window.C > 0.0)) fail("window.C", "must be > 0");
  if (window.r < 0.0) fail("window.r", "must be >= 0");

  for (std::size_t i = 0; i < sweep.epsilons.size(); ++i) {
    if (sweep.epsilons[i] < 0.0) fail("sweep.epsilons", "values must be >= 0");
    if (i > 0 && !(sweep.epsilons[i] < sweep.epsilons[i - 1])) fail("sweep.epsilons", "must be strictly decreasing");
  }
  for (double d : sweep.deltas) {
    if (!(d > 0.0 && d <= 1.0)) fail("sweep.deltas", "values must lie in (0, 1]");
  }
  for (double s : stability.sizes) {
    if (!(s >= 0.0)) fail("stability.sizes", "values must be >= 0");
  }
  if (verify.count < 1) fail("verify.count", "must be >= 1");
  if (verify.n < 4 || verify.n % 2) fail("verify.n", "must be even and >= 4");
  if (verify.mixed_n < 4 || verify.mixed_n % 2) fail("verify.mixed_n", "must be even and >= 4");
  if (!(verify.nu > 0.0) || !(verify.epsilon > 0.0)) fail("verify", "nu and epsilon must be > 0");
  if (verify.corrupt != "none" && verify.corrupt != "quarter_as_half") {
    fail("verify.corrupt", "expected none or quarter_as_half");
  }
}

ExperimentConfig parse_config(std::string_view text, const fs::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << e.description() << " (line " << e.source().begin.line << ")";
    throw InvalidArgument("config: " + os.str());
  }
  const Section top(&root, "");
  top.allow({"seed", "equation", "nonlinear", "grid", "operator", "time", "initial", "forcing", "output", "window",
             "sweep", "stability", "verify", "diagnose"});

  ExperimentConfig c;
  top.read("seed", c.seed);
  std::string eq = "ns";
  top.read("equation", eq);
  try {
    c.equation = parse_equation(eq);
  } catch (const InvalidArgument&) {
    fail("equation", "expected \"ns\" or \"pe\"");
  }
  top.read("nonlinear", c.nonlinear);

  const Section grid = top.sub("grid");
  grid.allow({"n", "dealias"});
  if (const auto* n = grid.find("n")) {
    if (const auto v = n->value_exact<std::int64_t>()) {
      c.n[0] = c.n[1] = c.n[2] = static_cast<int>(*v);
    } else if (const auto* arr = n->as_array(); arr && arr->size() == 3) {
      for (std::size_t i = 0; i < 3; ++i) {
        const auto e = (*arr)[i].value_exact<std::int64_t>();
        if (!e) fail("grid.n", "expected an integer or [n1, n2, n3]");
        c.n[i] = static_cast<int>(*e);
      }
    } else {
      fail("grid.n", "expected an integer or [n1, n2, n3]");
    }
  }
  std::string dealias = "2/3";
  grid.read("dealias", dealias);
  try {
    c.dealias = Rational::parse(dealias);
  } catch (const InvalidArgument&) {
    fail("grid.dealias", "expected a fraction \"p/q\"");
  }

  const Section op = top.sub("operator");
  op.allow({"variant", "nu", "epsilon", "l"});
  std::string variant = "full";
  op.read("variant", variant);
  try {
    c.op.variant = parse_variant(variant);
  } catch (const InvalidArgument&) {
    fail("operator.variant", "expected \"full\" or \"horizontal\"");
  }
  c.op.l = c.op.variant == Variant::HorizontalHyper ? 2.0 : (c.equation == Equation::Primitive ? 1.6 : 1.25);
  op.read("nu", c.op.nu);
  op.read("epsilon", c.op.epsilon);
  op.read_fraction("l", c.op.l);

  const Section time = top.sub("time");
  time.allow({"T", "dt", "record_every", "blowup_factor"});
  time.read("T", c.T);
  time.read("dt", c.dt);
  time.read("record_every", c.record_every);
  time.read("blowup_factor", c.blowup_factor);

  c.initial = read_profile(top.sub("initial"), base_dir, c.initial);
  const Section forcing = top.sub("forcing");
  c.forcing = read_profile(forcing, base_dir, c.forcing, true);
  forcing.read("kind", c.forcing_kind);
  forcing.read("omega", c.omega);
  if (c.forcing_kind == "none" && c.forcing.kind != "none") c.forcing_kind = "steady";

  const Section out = top.sub("output");
  out.allow({"checkpoints", "checkpoint_every"});
  out.read("checkpoints", c.output.checkpoints);
  out.read("checkpoint_every", c.output.checkpoint_every);

  const Section window = top.sub("window");
  window.allow({"r", "C"});
  window.read("r", c.window.r);
  window.read("C", c.window.C);

  const Section sweep = top.sub("sweep");
  sweep.allow({"epsilons", "deltas", "checkpoints"});
  sweep.read("epsilons", c.sweep.epsilons);
  sweep.read("deltas", c.sweep.deltas);
  sweep.read("checkpoints", c.sweep.checkpoints);

  const Section stab = top.sub("stability");
  stab.allow({"sizes", "perturbation"});
  stab.read("sizes", c.stability.sizes);
  c.stability.perturbation = read_profile(stab.sub("perturbation"), base_dir, c.stability.perturbation);

  const Section ver = top.sub("verify");
  ver.allow({"count", "n", "mixed_n", "spectrum_profile", "seed", "nu", "epsilon", "corrupt"});
  ver.read("count", c.verify.count);
  ver.read("n", c.verify.n);
  ver.read("mixed_n", c.verify.mixed_n);
  ver.read("spectrum_profile", c.verify.spectrum_profile);
  ver.read("seed", c.verify.seed);
  ver.read("nu", c.verify.nu);
  ver.read("epsilon", c.verify.epsilon);
  ver.read("corrupt", c.verify.corrupt);

  const Section diag = top.sub("diagnose");
  diag.allow({"input"});
  std::string input;
  diag.read("input", input);
  if (!input.empty()) c.diagnose.input = fs::path(input).is_absolute() ? fs::path(input) : base_dir / input;

  c.validate();
  return c;
}

ExperimentConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw InvalidArgument("config: cannot open " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), file.parent_path());
}

VectorField make_field(const FieldProfile& p, const ExperimentConfig& cfg, const Grid& grid) {
  const Equation eq = cfg.equation;
  const bool ns = eq == Equation::NavierStokes;
  if (p.kind == "beltrami") {
    if (!ns) throw InvalidArgument("profile beltrami is only defined for equation = \"ns\"");
    return beltrami_field(grid, p.amplitude);
  }
  if (p.kind == "taylor_green") return ns ? taylor_green_ns(grid, p.amplitude) : taylor_green_pe(grid, p.amplitude);
  if (p.kind == "baroclinic") {
    if (ns) throw InvalidArgument("profile baroclinic is only defined for equation = \"pe\"");
    return baroclinic_pe(grid, p.amplitude);
  }
  if (p.kind == "single_mode") return single_mode(grid, eq, p.mode, p.amplitude);
  if (p.kind == "random") {
    VectorField f = random_field(grid, constraint_for(eq), p.spectrum_profile, cfg.seed_for(p));
    f *= p.amplitude;
    return f;
  }
  if (p.kind == "checkpoint") {
    Checkpoint ck = read_checkpoint(p.path);
    if (ck.state.equation != eq) throw InvalidArgument("checkpoint " + p.path.string() + " solves another equation");
    if (!(ck.state.field.grid() == grid)) throw InvalidArgument("checkpoint " + p.path.string() + " has another grid");
    return ck.state.field;
  }
  return VectorField(grid, components(eq));
}

ForcingSpec make_forcing(const ExperimentConfig& cfg, const Grid& grid) {
  if (cfg.forcing_kind == "none") return ForcingSpec::none();
  VectorField f = make_field(cfg.forcing, cfg, grid);
  if (cfg.forcing_kind == "modulated") return ForcingSpec::modulated(std::move(f), cfg.omega);
  return ForcingSpec::steady(std::move(f));
}

RunConfig make_run_config(const ExperimentConfig& cfg) {
  const Grid grid = cfg.grid();
  RunConfig rc;
  rc.equation = cfg.equation;
  rc.op = cfg.op;
  rc.T = cfg.T;
  rc.dt = cfg.dt;
  rc.record_every = cfg.record_every;
  rc.blowup_factor = cfg.blowup_factor;
  rc.nonlinear = cfg.nonlinear;
  try {
    rc.initial = make_field(cfg.initial, cfg, grid);
  } catch (const InvalidArgument& e) {
    fail("initial", e.what());
  }
  try {
    rc.forcing = make_forcing(cfg, grid);
  } catch (const InvalidArgument& e) {
    fail("forcing", e.what());
  }
  rc.keep_snapshots = false;
  rc.validate();
  return rc;
}

}  // namespace hypervisc
