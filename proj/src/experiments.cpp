// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>

#include "hypervisc/checkpoint.hpp"
#include "hypervisc/parallel.hpp"
#include "json.hpp"

namespace hypervisc {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string snap_name(std::size_t j) { return fmt::format("snap_{:06}", j); }

ordered_json operator_json(const OperatorSpec& op) {
  return {{"variant", to_string(op.variant)}, {"nu", op.nu}, {"epsilon", op.epsilon}, {"l", op.l}};
}

ordered_json config_json(const ExperimentConfig& cfg) {
  return {{"equation", to_string(cfg.equation)},
          {"grid", {{"n", {cfg.n[0], cfg.n[1], cfg.n[2]}}, {"dealias", cfg.dealias.str()}}},
          {"operator", operator_json(cfg.op)},
          {"time", {{"T", cfg.T}, {"dt", cfg.dt}, {"record_every", cfg.record_every}}},
          {"initial", cfg.initial.kind},
          {"forcing", cfg.forcing_kind},
          {"nonlinear", cfg.nonlinear},
          {"seed", cfg.seed}};
}

// NaN is not valid JSON; emit null instead.
ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

std::string csv_number(double v) { return std::isfinite(v) ? fmt::format("{:.17g}", v) : std::string(); }

void require_sweep(const ExperimentConfig& cfg) {
  if (!(cfg.op.nu > 0.0)) throw InvalidArgument("operator.nu: the eps sweep needs nu > 0");
  if (cfg.sweep.epsilons.empty()) throw InvalidArgument("sweep.epsilons: must list at least one value");
  if (cfg.sweep.deltas.empty()) throw InvalidArgument("sweep.deltas: must list at least one value");
}

std::vector<fs::path> checkpoint_dirs(const fs::path& root) {
  std::vector<fs::path> dirs;
  if (!fs::is_directory(root)) throw InvalidArgument("not a directory: " + root.string());
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file() && e.path().filename() == "manifest.json") dirs.push_back(e.path().parent_path());
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

}  // namespace

void write_text(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  out << text;
  if (!out) throw InvalidArgument("cannot write " + file.string());
}

RunSummary run_experiment(const ExperimentConfig& cfg, const fs::path& out) {
  const RunConfig rc = make_run_config(cfg);
  Run r(rc);
  const bool ckpt = cfg.output.checkpoints && !out.empty();
  std::size_t record = 0;
  std::size_t last_written = std::numeric_limits<std::size_t>::max();
  const auto maybe_write = [&] {
    const int every = cfg.output.checkpoint_every;
    if (ckpt && every > 0 && record % static_cast<std::size_t>(every) == 0) {
      write_checkpoint(out / "checkpoints" / snap_name(record), r.state(), rc.op);
      last_written = record;
    }
  };
  maybe_write();
  while (!r.done()) {
    r.advance();
    ++record;
    maybe_write();
  }
  if (ckpt && last_written != record) write_checkpoint(out / "checkpoints" / snap_name(record), r.state(), rc.op);

  RunSummary s;
  s.steps = r.steps_taken();
  s.ledger = r.ledger();
  s.final_state = r.state();
  s.estimate = energy_estimate(s.ledger, rc.op, rc.forcing);
  const double u0 = norm_sq(rc.initial);
  const double f = forcing_dual_norm_sq(rc.op, rc.forcing, rc.T);
  const bool window_ok = u0 + f > 0.0 && rc.op.elliptic();
  if (window_ok) {
    const double r0 = cfg.window.r > 0.0 ? cfg.window.r : 1.0 / (4.0 * cfg.window.C);
    s.window = existence_window(u0, f, r0, cfg.window.C, rc.op, rc.grid(), rc.T);
  }

  if (!out.empty()) {
    write_text(out / "ledger.csv", s.ledger.csv());
    ordered_json j = {{"command", "run"}, {"config", config_json(cfg)}, {"steps", s.steps},
                      {"records", s.ledger.size()}, {"final_time", s.final_state.time},
                      {"initial_kinetic", s.ledger.kinetic.front()}, {"final_kinetic", s.ledger.kinetic.back()},
                      {"energy_residual", s.ledger.residual.back()},
                      {"energy_estimate",
                       {{"sup_kinetic", s.estimate.sup_kinetic},
                        {"dissipation", s.estimate.dissipation},
                        {"data", s.estimate.data},
                        {"constant", s.estimate.constant},
                        {"balance_constant", s.estimate.balance_constant}}}};
    if (window_ok) {
      j["existence_window"] = {{"r", s.window.r},   {"C", s.window.C},   {"B", s.window.B},
                               {"kmin", s.window.kmin}, {"Ca", s.window.Ca}, {"C1", s.window.C1},
                               {"window", s.window.window}};
    } else {
      j["existence_window"] = nullptr;
    }
    if (ckpt) j["final_checkpoint"] = "checkpoints/" + snap_name(record);
    write_text(out / "run.json", j.dump(2) + "\n");
  }
  return s;
}

double SweepReport::observed_rate(std::size_t i, std::size_t j) const {
  if (i + 1 >= epsilons.size()) return std::numeric_limits<double>::quiet_NaN();
  const double e0 = errors[i][j];
  const double e1 = errors[i + 1][j];
  if (!(e0 > 0.0 && e1 > 0.0 && epsilons[i + 1] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(e0 / e1) / std::log(epsilons[i] / epsilons[i + 1]);
}

std::string SweepReport::csv() const {
  std::string out = "epsilon,delta,error,observed_rate\n";
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    for (std::size_t j = 0; j < deltas.size(); ++j) {
      out += fmt::format("{:.17g},{:.17g},{:.17g},{}\n", epsilons[i], deltas[j], errors[i][j],
                         csv_number(observed_rate(i, j)));
    }
  }
  return out;
}

std::string SweepReport::time_derivative_csv() const {
  std::string out = "epsilon,dt_u_norm\n";
  out += fmt::format("reference,{:.17g}\n", reference_time_derivative_norm);
  for (std::size_t i = 0; i < time_derivative_norms.size(); ++i) {
    out += fmt::format("{:.17g},{:.17g}\n", epsilons[i], time_derivative_norms[i]);
  }
  return out;
}

SweepReport sweep_eps(const ExperimentConfig& cfg, int threads, const fs::path& out) {
  require_sweep(cfg);
  const RunConfig base = make_run_config(cfg);
  const auto& eps = cfg.sweep.epsilons;
  const auto& deltas = cfg.sweep.deltas;

  // runs[0] is the eps = 0 reference.
  std::vector<std::unique_ptr<Run>> runs;
  std::vector<std::string> names{"ref"};
  {
    RunConfig rc = base;
    rc.op.epsilon = 0.0;
    runs.push_back(std::make_unique<Run>(rc));
  }
  for (std::size_t i = 0; i < eps.size(); ++i) {
    RunConfig rc = base;
    rc.op.epsilon = eps[i];
    runs.push_back(std::make_unique<Run>(rc));
    names.push_back(fmt::format("eps_{:02}", i));
  }

  std::vector<std::vector<TrajectoryNormAccumulator>> err(eps.size());
  for (auto& row : err) {
    for (double d : deltas) row.emplace_back(NormSpec::sobolev(1.0 - d), TimeExponent::L2);
  }
  std::vector<TrajectoryNormAccumulator> dtu;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    dtu.emplace_back(NormSpec::sobolev(-kTimeDerivativeOrder), TimeExponent::L2);
  }
  std::vector<double> dtu_sq(runs.size(), 0.0);
  const bool ckpt = cfg.sweep.checkpoints && !out.empty();

  std::size_t record = 0;
  const auto process = [&] {
    const auto n = static_cast<int>(runs.size());
    parallel_for(n, threads, [&](int i) {
      const auto& run = *runs[static_cast<std::size_t>(i)];
      const VectorField d = time_derivative(run.state(), run.stepper().op(), run.stepper().forcing(), cfg.nonlinear);
      dtu_sq[static_cast<std::size_t>(i)] = graph_norm_sq(NormSpec::sobolev(-kTimeDerivativeOrder), d);
      if (ckpt) {
        write_checkpoint(out / "checkpoints" / names[static_cast<std::size_t>(i)] / snap_name(record), run.state(),
                         run.stepper().op());
      }
    });
    const State& ref = runs[0]->state();
    for (std::size_t i = 0; i < runs.size(); ++i) dtu[i].add_value(ref.time, dtu_sq[i]);
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const VectorField diff = runs[i + 1]->state().field - ref.field;
      for (std::size_t j = 0; j < deltas.size(); ++j) {
        err[i][j].add_value(ref.time, graph_norm_sq(NormSpec::sobolev(1.0 - deltas[j]), diff));
      }
    }
  };

  process();
  while (!runs[0]->done()) {
    parallel_for(static_cast<int>(runs.size()), threads, [&](int i) { runs[static_cast<std::size_t>(i)]->advance(); });
    ++record;
    process();
  }

  SweepReport rep;
  rep.epsilons = eps;
  rep.deltas = deltas;
  rep.steps = runs[0]->steps_taken();
  rep.snapshots = record + 1;
  rep.reference_time_derivative_norm = dtu[0].value();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    std::vector<double> row;
    for (auto& a : err[i]) row.push_back(a.value());
    rep.errors.push_back(std::move(row));
    rep.time_derivative_norms.push_back(dtu[i + 1].value());
  }

  if (!out.empty()) {
    write_text(out / "sweep.csv", rep.csv());
    write_text(out / "time_derivative.csv", rep.time_derivative_csv());
    ordered_json rates = ordered_json::array();
    for (std::size_t j = 0; j < deltas.size(); ++j) {
      ordered_json row = ordered_json::array();
      for (std::size_t i = 0; i + 1 < eps.size(); ++i) row.push_back(number(rep.observed_rate(i, j)));
      rates.push_back(row);
    }
    ordered_json j = {{"command", "sweep-eps"},
                      {"config", config_json(cfg)},
                      {"reference", {{"epsilon", 0.0}, {"operator", operator_json(runs[0]->stepper().op())}}},
                      {"epsilons", eps},
                      {"deltas", deltas},
                      {"errors", rep.errors},
                      {"observed_rates", rates},
                      {"time_derivative_order", kTimeDerivativeOrder},
                      {"time_derivative_norms", rep.time_derivative_norms},
                      {"reference_time_derivative_norm", rep.reference_time_derivative_norm},
                      {"steps", rep.steps},
                      {"snapshots", rep.snapshots}};
    write_text(out / "sweep.json", j.dump(2) + "\n");
  }
  return rep;
}

SweepReport sweep_from_checkpoints(const fs::path& out, const std::vector<double>& deltas) {
  std::ifstream in(out / "sweep.json");
  if (!in) throw InvalidArgument("no sweep.json in " + out.string());
  const auto manifest = nlohmann::json::parse(in);
  SweepReport rep;
  rep.epsilons = manifest.at("epsilons").get<std::vector<double>>();
  rep.deltas = deltas;
  const std::size_t snaps = manifest.at("snapshots").get<std::size_t>();
  std::vector<std::vector<TrajectoryNormAccumulator>> err(rep.epsilons.size());
  for (auto& row : err) {
    for (double d : deltas) row.emplace_back(NormSpec::sobolev(1.0 - d), TimeExponent::L2);
  }
  for (std::size_t k = 0; k < snaps; ++k) {
    const Checkpoint ref = read_checkpoint(out / "checkpoints" / "ref" / snap_name(k));
    for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
      const Checkpoint c = read_checkpoint(out / "checkpoints" / fmt::format("eps_{:02}", i) / snap_name(k));
      const VectorField diff = c.state.field - ref.state.field;
      for (std::size_t j = 0; j < deltas.size(); ++j) {
        err[i][j].add_value(ref.state.time, graph_norm_sq(NormSpec::sobolev(1.0 - deltas[j]), diff));
      }
    }
  }
  for (auto& row : err) {
    std::vector<double> v;
    for (auto& a : row) v.push_back(a.value());
    rep.errors.push_back(std::move(v));
  }
  rep.snapshots = snaps;
  return rep;
}

std::string StabilityReport::difference_csv() const {
  std::string out = "size,time,delta_sq,dissipation_cum\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto& d = differences[i];
    for (std::size_t k = 0; k < d.times.size(); ++k) {
      out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", sizes[i], d.times[k], d.delta_sq[k],
                         d.dissipation_cum[k]);
    }
  }
  return out;
}

std::string StabilityReport::gronwall_csv() const {
  std::string out = "size,delta0_sq,c_hat,envelope_holds,sup_ratio,determinism_violation\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto& f = fits[i];
    out += fmt::format("{:.17g},{:.17g},{:.17g},{},{:.17g},{}\n", sizes[i], differences[i].delta_sq.front(), f.c_hat,
                       f.envelope_holds ? 1 : 0, f.sup_ratio, f.determinism_violation ? 1 : 0);
  }
  return out;
}

StabilityReport stability_study(const ExperimentConfig& cfg, int threads, const fs::path& out) {
  const RunConfig base = make_run_config(cfg);
  const Grid grid = cfg.grid();
  VectorField unit;
  try {
    unit = make_field(cfg.stability.perturbation, cfg, grid);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string("stability.perturbation: ") + e.what());
  }
  const double unit_norm = std::sqrt(norm_sq(unit));
  if (unit_norm == 0.0) throw InvalidArgument("stability.perturbation: profile has zero norm");
  unit *= 1.0 / unit_norm;

  std::vector<std::unique_ptr<Run>> runs;
  runs.push_back(std::make_unique<Run>(base));
  for (double size : cfg.stability.sizes) {
    RunConfig rc = base;
    rc.initial.axpy(size, unit);
    runs.push_back(std::make_unique<Run>(rc));
  }
  std::vector<DifferenceTracker> trackers(cfg.stability.sizes.size(), DifferenceTracker(base.op));

  StabilityReport rep;
  rep.sizes = cfg.stability.sizes;
  const NormSpec half = NormSpec::graph_power(base.op, 0.5);
  const auto process = [&] {
    const State& b = runs[0]->state();
    rep.base_graph_sq.push_back(graph_norm_sq(half, b.field));
    for (std::size_t i = 0; i < trackers.size(); ++i) trackers[i].add(runs[i + 1]->state(), b);
  };
  process();
  while (!runs[0]->done()) {
    parallel_for(static_cast<int>(runs.size()), threads, [&](int i) { runs[static_cast<std::size_t>(i)]->advance(); });
    process();
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < trackers.size(); ++i) {
    rep.differences.push_back(trackers[i].series());
    rep.fits.push_back(gronwall_fit(rep.differences.back(), rep.base_graph_sq));
    if (rep.sizes[i] > 0.0) {
      lo = std::min(lo, rep.fits.back().sup_ratio);
      hi = std::max(hi, rep.fits.back().sup_ratio);
    }
  }
  rep.sup_ratio_spread = hi > 0.0 ? hi / lo : 1.0;

  if (!out.empty()) {
    write_text(out / "difference.csv", rep.difference_csv());
    write_text(out / "gronwall.csv", rep.gronwall_csv());
    bool feasible = true;
    ordered_json fits = ordered_json::array();
    for (std::size_t i = 0; i < rep.fits.size(); ++i) {
      const auto& f = rep.fits[i];
      feasible = feasible && f.envelope_holds;
      fits.push_back({{"size", rep.sizes[i]},
                      {"c_hat", f.c_hat},
                      {"envelope_holds", f.envelope_holds},
                      {"sup_ratio", f.sup_ratio},
                      {"determinism_violation", f.determinism_violation}});
    }
    ordered_json j = {{"command", "stability"},
                      {"config", config_json(cfg)},
                      {"perturbation", cfg.stability.perturbation.kind},
                      {"fits", fits},
                      {"envelope_feasible", feasible},
                      {"sup_ratio_spread", rep.sup_ratio_spread}};
    write_text(out / "stability.json", j.dump(2) + "\n");
  }
  return rep;
}

VerifyReport verify_estimates(const ExperimentConfig& cfg, int threads, const fs::path& out) {
  const auto& v = cfg.verify;
  const Grid grid(v.n, v.n, v.n);
  EnsembleSpec ens;
  ens.count = v.count;
  ens.spectrum_profile = v.spectrum_profile;
  ens.seed = v.seed.value_or(cfg.seed);

  const OperatorSpec ns_full{Variant::FullHyper, v.nu, v.epsilon, 1.25};
  const OperatorSpec pe_full{Variant::FullHyper, v.nu, v.epsilon, 1.6};
  const OperatorSpec horizontal{Variant::HorizontalHyper, v.nu, v.epsilon, 2.0};
  const NormCorruption corruption =
      v.corrupt == "quarter_as_half" ? NormCorruption::QuarterAsHalf : NormCorruption::None;

  VerifyReport rep;
  rep.ns_full = verify_ns_estimate(grid, ens, ns_full, threads);
  rep.ns_horizontal = verify_ns_estimate(grid, ens, horizontal, threads);
  rep.pe_full = verify_pe_estimate(grid, ens, pe_full, threads);
  rep.pe_horizontal = verify_pe_estimate(grid, ens, horizontal, threads);
  EnsembleSpec ns_ens = ens;
  ns_ens.constraint = Constraint::Solenoidal3D;
  EnsembleSpec pe_ens = ens;
  pe_ens.constraint = Constraint::Hydrostatic2D;
  rep.interpolation_ns = verify_interpolation(grid, ns_ens, ns_full, corruption, threads);
  rep.interpolation_pe = verify_interpolation(grid, pe_ens, horizontal, corruption, threads);
  rep.mixed = verify_mixed_derivative(horizontal, Grid(v.mixed_n, v.mixed_n, v.mixed_n));

  if (!out.empty()) {
    write_text(out / "ns_estimate_full.csv", rep.ns_full.csv());
    write_text(out / "ns_estimate_horizontal.csv", rep.ns_horizontal.csv());
    write_text(out / "pe_estimate_full.csv", rep.pe_full.csv());
    write_text(out / "pe_estimate_horizontal.csv", rep.pe_horizontal.csv());
    write_text(out / "interpolation_ns.csv", rep.interpolation_ns.csv());
    write_text(out / "interpolation_pe.csv", rep.interpolation_pe.csv());
    const auto stats = [](const RatioStats& s) {
      return ordered_json{{"max", s.max},          {"mean", s.mean},
                          {"members", s.samples.size()}, {"skipped", s.skipped},
                          {"histogram", s.histogram}, {"rescale_defect", s.rescale_defect}};
    };
    const auto interp = [](const InterpolationReport& r) {
      return ordered_json{
          {"passed", r.passed}, {"checked", r.checked}, {"violations", r.violations}, {"worst_margin", r.worst_margin}};
    };
    ordered_json j = {
        {"command", "verify"},
        {"grid", v.n},
        {"count", v.count},
        {"seed", ens.seed},
        {"spectrum_profile", v.spectrum_profile},
        {"ns_estimate", {{"full", stats(rep.ns_full)}, {"horizontal", stats(rep.ns_horizontal)}}},
        {"pe_estimate", {{"full", stats(rep.pe_full)}, {"horizontal", stats(rep.pe_horizontal)}}},
        {"interpolation", {{"ns", interp(rep.interpolation_ns)}, {"pe", interp(rep.interpolation_pe)}}},
        {"mixed_derivative",
         {{"grid", v.mixed_n},
          {"passed", rep.mixed.passed},
          {"checked", rep.mixed.checked},
          {"violations", rep.mixed.violations},
          {"worst_margin", rep.mixed.worst_margin}}},
        {"passed", rep.passed()}};
    write_text(out / "summary.json", j.dump(2) + "\n");
  }
  return rep;
}

std::size_t diagnose(const ExperimentConfig& cfg, const fs::path& input, const fs::path& out) {
  const auto dirs = checkpoint_dirs(input);
  std::string csv = "snapshot,time,kinetic,dissipation_rate,h1_sq,constraint_defect,dt_u_h_minus_2_6_sq\n";
  for (const auto& dir : dirs) {
    const Checkpoint ck = read_checkpoint(dir);
    const Grid& grid = ck.state.field.grid();
    ExperimentConfig local = cfg;
    local.equation = ck.state.equation;
    ForcingSpec forcing;
    if (cfg.forcing_kind != "none") {
      if (cfg.equation != ck.state.equation) {
        throw InvalidArgument("forcing: configured for another equation than " + dir.string());
      }
      forcing = make_forcing(local, grid);
    }
    const VectorField d = time_derivative(ck.state, ck.op, forcing, cfg.nonlinear);
    csv += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                       fs::relative(dir, input).generic_string(), ck.state.time, norm_sq(ck.state.field),
                       dissipation_rate(ck.op, ck.state.field), graph_norm_sq(NormSpec::sobolev(1.0), ck.state.field),
                       constraint_defect(ck.state), graph_norm_sq(NormSpec::sobolev(-kTimeDerivativeOrder), d));
  }
  write_text(out / "diagnostics.csv", csv);
  return dirs.size();
}

}  // namespace hypervisc
