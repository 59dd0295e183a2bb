// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_OPERATORS_HPP
#define HYPERVISC_OPERATORS_HPP

#include <string>

#include "hypervisc/spectral_field.hpp"

namespace hypervisc {

enum class Variant {
  FullHyper,        // A = -nu Lap + eps (-Lap)^l
  HorizontalHyper,  // A = -nu Lap + eps (-Lap_H)^l
};

std::string to_string(Variant v);
Variant parse_variant(const std::string& text);

/// Viscosity operator. Diagonal in Fourier space with symbol a(k).
struct OperatorSpec {
  Variant variant = Variant::FullHyper;
  double nu = 1.0;
  double epsilon = 0.0;
  double l = 1.25;

  /// Throws InvalidArgument for negative coefficients, l <= 1, or an
  /// operator that vanishes identically.
  void validate() const;
  /// True when a(k) > 0 for every k != 0.
  bool elliptic() const;

  double symbol(double abs_sq, double abs_h_sq) const;
  double symbol(const Mode& m) const { return symbol(m.abs_sq(), m.abs_h_sq()); }
  /// Same symbol with every nonzero coefficient replaced by 1; drives the
  /// graph-norm weights.
  double unit_symbol(double abs_sq, double abs_h_sq) const;
  double unit_symbol(const Mode& m) const { return unit_symbol(m.abs_sq(), m.abs_h_sq()); }
};

double symbol(const OperatorSpec& spec, const WaveIndex& k);

/// Smallest symbol value over the retained nonzero modes of `grid`.
double min_nonzero_symbol(const OperatorSpec& spec, const Grid& grid);

enum class ZeroModePolicy {
  Reject,  // negative power on content where a(k) = 0 throws InvalidArgument
  Drop,    // that content is mapped to zero
};

/// out(k) = a(k)^power f(k). Where a(k) = 0 the coefficient is kept for
/// power == 0 and mapped to zero otherwise (negative powers subject to `policy`).
VectorField apply_operator(const OperatorSpec& spec, const VectorField& f, double power,
                           ZeroModePolicy policy = ZeroModePolicy::Reject);

struct NormSpec {
  enum class Kind { GraphPower, Sobolev, Anisotropic };

  Kind kind = Kind::Sobolev;
  double s = 0.0;  // GraphPower: operator power; Sobolev / Anisotropic: horizontal order
  double r = 0.0;  // Anisotropic: vertical order
  OperatorSpec op;

  static NormSpec graph_power(const OperatorSpec& op, double s) { return {Kind::GraphPower, s, 0.0, op}; }
  static NormSpec sobolev(double s) { return {Kind::Sobolev, s, 0.0, {}}; }
  static NormSpec anisotropic(double r, double s) { return {Kind::Anisotropic, s, r, {}}; }

  /// Squared-norm weight m(k):
  ///   GraphPower(s):     (1 + a1(k))^(2s), a1 = unit_symbol
  ///   Sobolev(s):        (1 + |kappa|^2)^s
  ///   Anisotropic(r,s):  (1 + kappa3^2)^r (1 + |kappa_H|^2)^s
  double weight(const Mode& m) const;
};

double graph_norm_sq(const NormSpec& spec, const SpectralField& f);
double graph_norm_sq(const NormSpec& spec, const VectorField& f);
double graph_norm(const NormSpec& spec, const VectorField& f);

/// Helmholtz-Leray projection onto divergence-free fields.
VectorField leray_project(const VectorField& u);

/// Hydrostatic projection: 2-D Leray projection of the vertical average,
/// z-dependent part untouched. Throws InvalidArgument on odd content.
VectorField hydrostatic_project(const VectorField& v);

SpectralField divergence(const VectorField& u);
SpectralField divergence_h(const VectorField& v);

/// The k3 = 0 slice, i.e. (1/2) int_{-1}^{1} f dz.
SpectralField vertical_average(const SpectralField& f);
VectorField vertical_average(const VectorField& f);

}  // namespace hypervisc

#endif  // HYPERVISC_OPERATORS_HPP
