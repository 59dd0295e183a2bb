// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hypervisc/transform.hpp"

namespace hypervisc {

std::string to_string(Equation e) { return e == Equation::NavierStokes ? "ns" : "pe"; }

Equation parse_equation(const std::string& text) {
  if (text == "ns") return Equation::NavierStokes;
  if (text == "pe") return Equation::Primitive;
  throw InvalidArgument("unknown equation '" + text + "' (expected ns|pe)");
}

int components(Equation e) { return e == Equation::NavierStokes ? 3 : 2; }

namespace {

double h1_scale(const VectorField& f) {
  return std::sqrt(graph_norm_sq(NormSpec::sobolev(1.0), f));
}

}  // namespace

double constraint_defect(const State& s) {
  if (s.field.size() != components(s.equation)) {
    throw InvalidArgument("state has the wrong number of components for its equation");
  }
  if (s.equation == Equation::NavierStokes) return std::sqrt(norm_sq(divergence(s.field)));
  const double mean_div = std::sqrt(norm_sq(vertical_average(divergence_h(s.field))));
  const double odd = std::sqrt(norm_sq(symmetrize_parity(s.field, Parity::Odd)));
  return mean_div + odd;
}

void validate_state(const State& s, double tol) {
  const double defect = constraint_defect(s);
  if (defect > tol * std::max(1.0, h1_scale(s.field))) {
    throw InvalidArgument("state violates the " +
                          std::string(s.equation == Equation::NavierStokes ? "solenoidal"
                                                                           : "hydrostatic/parity") +
                          " constraint (defect " + std::to_string(defect) + ")");
  }
}

SpectralField vertical_velocity(const VectorField& v) {
  if (v.size() != 2) throw InvalidArgument("vertical_velocity expects 2 components");
  const Grid& g = v.grid();
  const SpectralField div = divergence_h(v);
  const double defect = std::sqrt(norm_sq(vertical_average(div)));
  if (defect > 1e-10 * std::max(1.0, h1_scale(v))) {
    throw InvalidArgument("vertical_velocity: div_H of the vertical mean does not vanish");
  }

  SpectralField w(g);
  g.for_each_mode([&](const Mode& m) {
    if (m.kz != 0.0) w[m.index] = -div[m.index] / Complex(0.0, m.kz);
  });
  // Fix the k3 = 0 slice by w(z = -1) = 0, where exp(i pi k3 (-1)) = (-1)^k3.
  const int nh = g.n1_half();
  for (int i2 = 0; i2 < g.n2(); ++i2) {
    for (int i1 = 0; i1 < nh; ++i1) {
      Complex sum = 0.0;
      for (int i3 = 1; i3 < g.n3(); ++i3) {
        const int k3 = g.k3_of(i3);
        sum += (k3 % 2 == 0 ? 1.0 : -1.0) * w[g.index(i1, i2, i3)];
      }
      w[g.index(i1, i2, 0)] = -sum;
    }
  }
  return w;
}

namespace {

using Physical = std::vector<double>;

Physical physical(const SpectralField& f) {
  Physical out(f.grid().physical_size());
  detail::to_physical(f, out);
  return out;
}

SpectralField product(const Physical& a, const Physical& b, const Grid& g) {
  Physical p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] * b[i];
  SpectralField out(g);
  detail::to_spectral(p, out);
  return out;
}

}  // namespace

VectorField advection_ns(const VectorField& u) {
  if (u.size() != 3) throw InvalidArgument("advection_ns expects 3 components");
  const Grid& g = u.grid();
  const std::array<Physical, 3> up{physical(u[0]), physical(u[1]), physical(u[2])};
  // Symmetric flux tensor u_i u_j.
  std::array<std::array<const SpectralField*, 3>, 3> flux{};
  std::vector<SpectralField> store;
  store.reserve(6);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      store.push_back(product(up[i], up[j], g));
      flux[i][j] = flux[j][i] = &store.back();
    }
  }
  VectorField out(g, 3);
  const Complex I(0.0, 1.0);
  g.for_each_mode([&](const Mode& m) {
    if (!m.retained) return;
    for (int i = 0; i < 3; ++i) {
      const Complex d = m.kx * (*flux[i][0])[m.index] + m.ky * (*flux[i][1])[m.index] +
                        m.kz * (*flux[i][2])[m.index];
      out[i][m.index] = I * d;
    }
  });
  return out;
}

VectorField advection_pe(const VectorField& v) {
  if (v.size() != 2) throw InvalidArgument("advection_pe expects 2 components");
  const Grid& g = v.grid();
  const SpectralField w = vertical_velocity(v);
  const Physical v1 = physical(v[0]);
  const Physical v2 = physical(v[1]);
  const Physical wp = physical(w);
  const SpectralField f11 = product(v1, v1, g);
  const SpectralField f12 = product(v1, v2, g);
  const SpectralField f22 = product(v2, v2, g);
  const SpectralField fw1 = product(wp, v1, g);
  const SpectralField fw2 = product(wp, v2, g);
  VectorField out(g, 2);
  const Complex I(0.0, 1.0);
  g.for_each_mode([&](const Mode& m) {
    if (!m.retained) return;
    const std::size_t k = m.index;
    out[0][k] = I * (m.kx * f11[k] + m.ky * f12[k] + m.kz * fw1[k]);
    out[1][k] = I * (m.kx * f12[k] + m.ky * f22[k] + m.kz * fw2[k]);
  });
  return out;
}

VectorField nonlinearity_ns(const VectorField& u) { return leray_project(advection_ns(u)); }

VectorField nonlinearity_pe(const VectorField& v) {
  // The advection of an even field is even up to round-off; clean it before
  // the projection's parity check.
  return hydrostatic_project(symmetrize_parity(advection_pe(v), Parity::Even));
}

VectorField nonlinearity(const State& s) {
  return s.equation == Equation::NavierStokes ? nonlinearity_ns(s.field) : nonlinearity_pe(s.field);
}

SpectralField recover_pressure_ns(const VectorField& u) {
  const VectorField n = advection_ns(u);
  SpectralField p(u.grid());
  const Complex I(0.0, 1.0);
  u.grid().for_each_mode([&](const Mode& m) {
    const double k2 = m.kx * m.kx + m.ky * m.ky + m.kz * m.kz;
    if (k2 == 0.0) return;
    p[m.index] = I * (m.kx * n[0][m.index] + m.ky * n[1][m.index] + m.kz * n[2][m.index]) / k2;
  });
  return p;
}

SpectralField recover_pressure_pe(const VectorField& v) {
  const VectorField n = advection_pe(v);
  SpectralField p(v.grid());
  const Complex I(0.0, 1.0);
  v.grid().for_each_mode([&](const Mode& m) {
    if (m.i3 != 0) return;
    const double k2 = m.kx * m.kx + m.ky * m.ky;
    if (k2 == 0.0) return;
    p[m.index] = I * (m.kx * n[0][m.index] + m.ky * n[1][m.index]) / k2;
  });
  return p;
}

double ForcingSpec::envelope(double t) const {
  switch (kind) {
    case Kind::None:
      return 0.0;
    case Kind::Steady:
      return 1.0;
    case Kind::Modulated:
      return std::cos(omega * t);
  }
  return 0.0;
}

void ForcingSpec::validate(Equation equation, const Grid& grid) const {
  if (kind == Kind::None) return;
  if (!field) throw InvalidArgument("forcing: active forcing needs a field");
  if (!(field->grid() == grid)) throw InvalidArgument("forcing: field lives on a different grid");
  if (!std::isfinite(omega)) throw InvalidArgument("forcing: omega must be finite");
  validate_state(State{equation, *field, 0.0}, 1e-10);
}

}  // namespace hypervisc
