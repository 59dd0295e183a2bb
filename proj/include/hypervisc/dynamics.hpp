// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_DYNAMICS_HPP
#define HYPERVISC_DYNAMICS_HPP

#include <optional>
#include <string>

#include "hypervisc/operators.hpp"

namespace hypervisc {

enum class Equation {
  NavierStokes,  // u = (u1, u2, u3), div u = 0
  Primitive,     // v = (v1, v2) even in z, div_H of the vertical mean = 0
};

std::string to_string(Equation e);
Equation parse_equation(const std::string& text);
int components(Equation e);

struct State {
  Equation equation = Equation::NavierStokes;
  VectorField field;
  double time = 0.0;
};

/// L2 size of the constraint violation: |div u| for Navier-Stokes;
/// |div_H mean(v)| plus the odd-in-z part for the primitive equations.
double constraint_defect(const State& s);
/// Throws InvalidArgument when the defect exceeds tol * max(1, |field|_{H^1}).
void validate_state(const State& s, double tol = 1e-12);

/// Vertical velocity w(v) = -int_{-1}^{z} div_H v. Rejects fields whose
/// vertical mean is not horizontally divergence-free.
SpectralField vertical_velocity(const VectorField& v);

/// Dealiased div(u (x) u), before projection.
VectorField advection_ns(const VectorField& u);
/// Dealiased div(u(v) (x) v) with u(v) = (v, w(v)), before projection.
VectorField advection_pe(const VectorField& v);

/// P_sigma div(u (x) u).
VectorField nonlinearity_ns(const VectorField& u);
/// P_sigma_bar (w(v) dz v + v . grad_H v).
VectorField nonlinearity_pe(const VectorField& v);
VectorField nonlinearity(const State& s);

/// Full pressure p with grad p = P N - N (zero mean), N = advection_ns(u).
SpectralField recover_pressure_ns(const VectorField& u);
/// Surface pressure p_s(x, y) with grad_H p_s balancing the gradient part of
/// the vertically averaged advection. Only the k3 = 0 slice is populated.
SpectralField recover_pressure_pe(const VectorField& v);

/// Body force: none, steady field, or steady field times cos(omega t).
struct ForcingSpec {
  enum class Kind { None, Steady, Modulated };

  Kind kind = Kind::None;
  std::optional<VectorField> field;
  double omega = 0.0;

  static ForcingSpec none() { return {}; }
  static ForcingSpec steady(VectorField f) { return {Kind::Steady, std::move(f), 0.0}; }
  static ForcingSpec modulated(VectorField f, double omega) { return {Kind::Modulated, std::move(f), omega}; }

  bool active() const { return kind != Kind::None; }
  double envelope(double t) const;
  /// Throws InvalidArgument when the field breaks the constraints of `equation`.
  void validate(Equation equation, const Grid& grid) const;
};

}  // namespace hypervisc

#endif  // HYPERVISC_DYNAMICS_HPP
