// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_ESTIMATES_HPP
#define HYPERVISC_ESTIMATES_HPP

#include <string>
#include <vector>

#include "hypervisc/profiles.hpp"

namespace hypervisc {

/// Left side, right side and ratio of a nonlinear estimate for one field.
struct RatioSample {
  int member = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct RatioStats {
  std::vector<RatioSample> samples;  // zero fields are skipped
  int skipped = 0;
  double max = 0.0;
  double mean = 0.0;
  /// Counts over 10 equal bins of [0, max].
  std::vector<int> histogram;
  /// Largest relative change of a ratio under u -> 2u.
  double rescale_defect = 0.0;

  std::string csv() const;
};

/// |P div(u (x) u)|_{D(A^{-1/2})} against |u|^2_{D(A^{1/4})} for one field.
RatioSample ns_estimate_sample(const VectorField& u, const OperatorSpec& op);
/// Primitive-equation nonlinearity in D(A^{-1/2}) against
///   |v|_{D(A^{13/32})} |v|_{D(A^{3/32})}  (full, l = 8/5)
///   |v|_{D(A^{3/8})}   |v|_{D(A^{1/8})}   (horizontal, l = 2).
RatioSample pe_estimate_sample(const VectorField& v, const OperatorSpec& op);

/// Throws InvalidArgument unless `op` is full with l = 5/4 or horizontal with l = 2 (nu > 0).
void require_ns_estimate_operator(const OperatorSpec& op);
/// Throws InvalidArgument unless `op` is full with l = 8/5 or horizontal with l = 2 (nu > 0).
void require_pe_estimate_operator(const OperatorSpec& op);

RatioStats verify_ns_estimate(const Grid& grid, const EnsembleSpec& ensemble, const OperatorSpec& op,
                              int threads = 1);
RatioStats verify_pe_estimate(const Grid& grid, const EnsembleSpec& ensemble, const OperatorSpec& op,
                              int threads = 1);

/// Both interpolation inequalities for one field, in the GraphPower norms of `op`:
///   |f|^2_{1/4} <= |f|_0 |f|_{1/2}   and   |f|_{1/8} <= |f|_0^{3/4} |f|_{1/2}^{1/4}.
struct InterpolationSample {
  int member = 0;
  double lhs_quarter = 0.0;
  double rhs_quarter = 0.0;
  double lhs_eighth = 0.0;
  double rhs_eighth = 0.0;
  /// Smallest relative slack (rhs - lhs) / rhs over both inequalities.
  double margin = 0.0;
};

/// Deliberate perturbation of the norm weights, used to check that a broken
/// norm engine is detected.
enum class NormCorruption { None, QuarterAsHalf };

InterpolationSample interpolation_sample(const VectorField& f, const OperatorSpec& op,
                                         NormCorruption corruption = NormCorruption::None);

struct InterpolationReport {
  bool passed = true;
  int checked = 0;
  int violations = 0;
  double worst_margin = 0.0;
  std::vector<InterpolationSample> samples;
  std::string csv() const;
};

/// Violation means margin < -1e-12.
InterpolationReport verify_interpolation(const Grid& grid, const EnsembleSpec& ensemble, const OperatorSpec& op,
                                         NormCorruption corruption = NormCorruption::None, int threads = 1);

/// (1/2)(h^2 + v^2) - h v for h = |kappa_H|^2, v = |kappa_3|, relative to the right side.
double mixed_derivative_margin(double abs_h_sq, double abs_k3);

struct MixedDerivativeReport {
  bool passed = true;
  long checked = 0;
  long violations = 0;
  double worst_margin = 0.0;
};

/// |kappa_H|^2 |kappa_3| <= (|kappa_H|^4 + kappa_3^2) / 2 over every retained mode.
/// Requires the horizontal variant with l = 2.
MixedDerivativeReport verify_mixed_derivative(const OperatorSpec& op, const Grid& grid);

}  // namespace hypervisc

#endif  // HYPERVISC_ESTIMATES_HPP
