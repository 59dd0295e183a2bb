// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/estimates.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypervisc/parallel.hpp"

namespace hypervisc {

namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

double gnorm(const OperatorSpec& op, double s, const VectorField& f) {
  return graph_norm(NormSpec::graph_power(op, s), f);
}

RatioSample make_sample(double lhs, double rhs) {
  RatioSample r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
  return r;
}

template <class Sampler>
RatioStats collect(const Grid& grid, const EnsembleSpec& ensemble, int threads, Sampler&& sample) {
  if (ensemble.count < 1) throw InvalidArgument("ensemble count must be >= 1");
  const auto n = static_cast<std::size_t>(ensemble.count);
  std::vector<RatioSample> all(n);
  std::vector<double> rescale(n, 0.0);
  std::vector<char> zero(n, 0);
  parallel_for(ensemble.count, threads, [&](int i) {
    const auto idx = static_cast<std::size_t>(i);
    VectorField u = ensemble_member(grid, ensemble, i);
    if (max_abs(u) == 0.0) {
      zero[idx] = 1;
      return;
    }
    all[idx] = sample(u);
    all[idx].member = i;
    u *= 2.0;
    const RatioSample scaled = sample(u);
    if (all[idx].ratio > 0.0) rescale[idx] = std::abs(scaled.ratio / all[idx].ratio - 1.0);
  });

  RatioStats stats;
  for (std::size_t i = 0; i < n; ++i) {
    if (zero[i]) {
      ++stats.skipped;
      continue;
    }
    stats.samples.push_back(all[i]);
    stats.max = std::max(stats.max, all[i].ratio);
    stats.mean += all[i].ratio;
    stats.rescale_defect = std::max(stats.rescale_defect, rescale[i]);
  }
  if (!stats.samples.empty()) stats.mean /= static_cast<double>(stats.samples.size());
  stats.histogram.assign(10, 0);
  for (const auto& s : stats.samples) {
    const int bin = stats.max > 0.0 ? std::min(9, static_cast<int>(10.0 * s.ratio / stats.max)) : 0;
    ++stats.histogram[static_cast<std::size_t>(bin)];
  }
  return stats;
}

}  // namespace

std::string RatioStats::csv() const {
  std::string out = "member,lhs,rhs,ratio\n";
  for (const auto& s : samples) out += fmt::format("{},{:.17g},{:.17g},{:.17g}\n", s.member, s.lhs, s.rhs, s.ratio);
  return out;
}

void require_ns_estimate_operator(const OperatorSpec& op) {
  op.validate();
  const bool full = op.variant == Variant::FullHyper && near(op.l, 1.25);
  const bool horizontal = op.variant == Variant::HorizontalHyper && near(op.l, 2.0);
  if (!(full || horizontal) || !(op.nu > 0.0) || !(op.epsilon > 0.0)) {
    throw InvalidArgument("NS estimate needs nu, epsilon > 0 and full l = 5/4 or horizontal l = 2");
  }
}

void require_pe_estimate_operator(const OperatorSpec& op) {
  op.validate();
  const bool full = op.variant == Variant::FullHyper && near(op.l, 1.6);
  const bool horizontal = op.variant == Variant::HorizontalHyper && near(op.l, 2.0);
  if (!(full || horizontal) || !(op.nu > 0.0) || !(op.epsilon > 0.0)) {
    throw InvalidArgument("PE estimate needs nu, epsilon > 0 and full l = 8/5 or horizontal l = 2");
  }
}

RatioSample ns_estimate_sample(const VectorField& u, const OperatorSpec& op) {
  const double rhs = std::pow(gnorm(op, 0.25, u), 2);
  return make_sample(gnorm(op, -0.5, nonlinearity_ns(u)), rhs);
}

RatioSample pe_estimate_sample(const VectorField& v, const OperatorSpec& op) {
  const bool full = op.variant == Variant::FullHyper;
  const double rhs = full ? gnorm(op, 13.0 / 32.0, v) * gnorm(op, 3.0 / 32.0, v)
                          : gnorm(op, 3.0 / 8.0, v) * gnorm(op, 1.0 / 8.0, v);
  return make_sample(gnorm(op, -0.5, nonlinearity_pe(v)), rhs);
}

RatioStats verify_ns_estimate(const Grid& grid, const EnsembleSpec& ensemble, const OperatorSpec& op, int threads) {
  require_ns_estimate_operator(op);
  EnsembleSpec e = ensemble;
  e.constraint = Constraint::Solenoidal3D;
  return collect(grid, e, threads, [&](const VectorField& u) { return ns_estimate_sample(u, op); });
}

RatioStats verify_pe_estimate(const Grid& grid, const EnsembleSpec& ensemble, const OperatorSpec& op, int threads) {
  require_pe_estimate_operator(op);
  EnsembleSpec e = ensemble;
  e.constraint = Constraint::Hydrostatic2D;
  return collect(grid, e, threads, [&](const VectorField& v) { return pe_estimate_sample(v, op); });
}

InterpolationSample interpolation_sample(const VectorField& f, const OperatorSpec& op, NormCorruption corruption) {
  const double n0 = gnorm(op, 0.0, f);
  const double n2 = gnorm(op, 0.5, f);
  const double n4 = gnorm(op, corruption == NormCorruption::QuarterAsHalf ? 0.5 : 0.25, f);
  const double n8 = gnorm(op, 0.125, f);
  InterpolationSample s;
  s.lhs_quarter = n4 * n4;
  s.rhs_quarter = n0 * n2;
  s.lhs_eighth = n8;
  s.rhs_eighth = std::pow(n0, 0.75) * std::pow(n2, 0.25);
  const auto slack = [](double lhs, double rhs) { return rhs > 0.0 ? (rhs - lhs) / rhs : (lhs > 0.0 ? -1.0 : 0.0); };
  s.margin = std::min(slack(s.lhs_quarter, s.rhs_quarter), slack(s.lhs_eighth, s.rhs_eighth));
  return s;
}

std::string InterpolationReport::csv() const {
  std::string out = "member,lhs_quarter,rhs_quarter,lhs_eighth,rhs_eighth,margin\n";
  for (const auto& s : samples) {
    out += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.member, s.lhs_quarter, s.rhs_quarter,
                       s.lhs_eighth, s.rhs_eighth, s.margin);
  }
  return out;
}

InterpolationReport verify_interpolation(const Grid& grid, const EnsembleSpec& ensemble, const OperatorSpec& op,
                                         NormCorruption corruption, int threads) {
  op.validate();
  if (ensemble.count < 1) throw InvalidArgument("ensemble count must be >= 1");
  InterpolationReport rep;
  rep.samples.resize(static_cast<std::size_t>(ensemble.count));
  parallel_for(ensemble.count, threads, [&](int i) {
    auto& s = rep.samples[static_cast<std::size_t>(i)];
    s = interpolation_sample(ensemble_member(grid, ensemble, i), op, corruption);
    s.member = i;
  });
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : rep.samples) {
    ++rep.checked;
    if (s.margin < -1e-12) ++rep.violations;
    rep.worst_margin = std::min(rep.worst_margin, s.margin);
  }
  rep.passed = rep.violations == 0;
  return rep;
}

double mixed_derivative_margin(double abs_h_sq, double abs_k3) {
  const double rhs = 0.5 * (abs_h_sq * abs_h_sq + abs_k3 * abs_k3);
  if (rhs == 0.0) return 0.0;
  // Direct difference rather than (h - v)^2 / 2, so a slip in either side shows up.
  return (rhs - abs_h_sq * abs_k3) / rhs;
}

MixedDerivativeReport verify_mixed_derivative(const OperatorSpec& op, const Grid& grid) {
  op.validate();
  if (op.variant != Variant::HorizontalHyper || !near(op.l, 2.0)) {
    throw InvalidArgument("mixed-derivative check needs the horizontal variant with l = 2");
  }
  MixedDerivativeReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  grid.for_each_mode([&](const Mode& m) {
    if (!m.retained) return;
    const double margin = mixed_derivative_margin(m.abs_h_sq(), m.az);
    ++rep.checked;
    if (margin < -1e-15) ++rep.violations;
    rep.worst_margin = std::min(rep.worst_margin, margin);
  });
  rep.passed = rep.violations == 0;
  return rep;
}

}  // namespace hypervisc
