// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/operators.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hypervisc {

std::string to_string(Variant v) {
  return v == Variant::FullHyper ? "full" : "horizontal";
}

Variant parse_variant(const std::string& text) {
  if (text == "full") return Variant::FullHyper;
  if (text == "horizontal") return Variant::HorizontalHyper;
  throw InvalidArgument("unknown operator variant '" + text + "' (expected full|horizontal)");
}

void OperatorSpec::validate() const {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw InvalidArgument("nu must be finite and >= 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be finite and >= 0");
  if (!(l > 1.0) || !std::isfinite(l)) throw InvalidArgument("l must be finite and > 1");
  if (nu == 0.0 && epsilon == 0.0) throw InvalidArgument("nu and epsilon cannot both vanish");
  if (variant == Variant::FullHyper && nu == 0.0 && !(epsilon > 0.0)) {
    throw InvalidArgument("full hyper-viscosity with nu = 0 requires epsilon > 0");
  }
}

bool OperatorSpec::elliptic() const {
  return nu > 0.0 || (variant == Variant::FullHyper && epsilon > 0.0);
}

double OperatorSpec::symbol(double abs_sq, double abs_h_sq) const {
  const double hyper_base = variant == Variant::FullHyper ? abs_sq : abs_h_sq;
  double a = nu * abs_sq;
  if (epsilon != 0.0 && hyper_base > 0.0) a += epsilon * std::pow(hyper_base, l);
  return a;
}

double OperatorSpec::unit_symbol(double abs_sq, double abs_h_sq) const {
  const double hyper_base = variant == Variant::FullHyper ? abs_sq : abs_h_sq;
  double a = 0.0;
  if (nu != 0.0) a += abs_sq;
  if (epsilon != 0.0 && hyper_base > 0.0) a += std::pow(hyper_base, l);
  return a;
}

double symbol(const OperatorSpec& spec, const WaveIndex& k) {
  constexpr double pi = std::numbers::pi;
  const double h = 4.0 * pi * pi * (static_cast<double>(k.k1) * k.k1 + static_cast<double>(k.k2) * k.k2);
  const double v = pi * pi * static_cast<double>(k.k3) * k.k3;
  return spec.symbol(h + v, h);
}

double min_nonzero_symbol(const OperatorSpec& spec, const Grid& grid) {
  double best = std::numeric_limits<double>::infinity();
  grid.for_each_mode([&](const Mode& m) {
    if (!m.retained || m.index == 0) return;
    const double a = spec.symbol(m);
    if (a < best) best = a;
  });
  return best;
}

VectorField apply_operator(const OperatorSpec& spec, const VectorField& f, double power,
                           ZeroModePolicy policy) {
  VectorField out = f;
  const Grid& g = f.grid();
  g.for_each_mode([&](const Mode& m) {
    const double a = spec.symbol(m);
    double factor = 1.0;
    if (a > 0.0) {
      factor = std::pow(a, power);
    } else if (power != 0.0) {
      factor = 0.0;
      if (power < 0.0 && policy == ZeroModePolicy::Reject) {
        for (int c = 0; c < f.size(); ++c) {
          if (f[c][m.index] != Complex(0.0)) {
            throw InvalidArgument("apply_operator: negative power of A on content in its kernel (zero mode)");
          }
        }
      }
    }
    for (int c = 0; c < out.size(); ++c) out[c][m.index] *= factor;
  });
  return out;
}

double NormSpec::weight(const Mode& m) const {
  switch (kind) {
    case Kind::GraphPower:
      return std::pow(1.0 + op.unit_symbol(m), 2.0 * s);
    case Kind::Sobolev:
      return std::pow(1.0 + m.abs_sq(), s);
    case Kind::Anisotropic:
      return std::pow(1.0 + m.az * m.az, r) * std::pow(1.0 + m.abs_h_sq(), s);
  }
  return 1.0;
}

double graph_norm_sq(const NormSpec& spec, const SpectralField& f) {
  double sum = 0.0;
  const auto c = f.coeffs();
  f.grid().for_each_mode([&](const Mode& m) {
    const double mag = std::norm(c[m.index]);
    if (mag != 0.0) sum += m.multiplicity * spec.weight(m) * mag;
  });
  return sum;
}

double graph_norm_sq(const NormSpec& spec, const VectorField& f) {
  double sum = 0.0;
  for (int i = 0; i < f.size(); ++i) sum += graph_norm_sq(spec, f[i]);
  return sum;
}

double graph_norm(const NormSpec& spec, const VectorField& f) { return std::sqrt(graph_norm_sq(spec, f)); }

VectorField leray_project(const VectorField& u) {
  if (u.size() != 3) throw InvalidArgument("leray_project expects 3 components");
  VectorField out = u;
  u.grid().for_each_mode([&](const Mode& m) {
    const double k2 = m.kx * m.kx + m.ky * m.ky + m.kz * m.kz;
    if (k2 == 0.0) return;
    const Complex dot = m.kx * u[0][m.index] + m.ky * u[1][m.index] + m.kz * u[2][m.index];
    const Complex s = dot / k2;
    out[0][m.index] -= m.kx * s;
    out[1][m.index] -= m.ky * s;
    out[2][m.index] -= m.kz * s;
  });
  return out;
}

VectorField hydrostatic_project(const VectorField& v) {
  if (v.size() != 2) throw InvalidArgument("hydrostatic_project expects 2 components");
  if (parity_defect(v, Parity::Even) > 1e-10) {
    throw InvalidArgument("hydrostatic_project: field is not even in z");
  }
  VectorField out = v;
  v.grid().for_each_mode([&](const Mode& m) {
    if (m.i3 != 0) return;
    const double k2 = m.kx * m.kx + m.ky * m.ky;
    if (k2 == 0.0) return;
    const Complex s = (m.kx * v[0][m.index] + m.ky * v[1][m.index]) / k2;
    out[0][m.index] -= m.kx * s;
    out[1][m.index] -= m.ky * s;
  });
  return out;
}

SpectralField divergence(const VectorField& u) {
  if (u.size() != 3) throw InvalidArgument("divergence expects 3 components");
  SpectralField out(u.grid());
  const Complex i(0.0, 1.0);
  u.grid().for_each_mode([&](const Mode& m) {
    out[m.index] = i * (m.kx * u[0][m.index] + m.ky * u[1][m.index] + m.kz * u[2][m.index]);
  });
  return out;
}

SpectralField divergence_h(const VectorField& v) {
  SpectralField out(v.grid());
  const Complex i(0.0, 1.0);
  v.grid().for_each_mode([&](const Mode& m) {
    out[m.index] = i * (m.kx * v[0][m.index] + m.ky * v[1][m.index]);
  });
  return out;
}

SpectralField vertical_average(const SpectralField& f) {
  SpectralField out(f.grid());
  f.grid().for_each_mode([&](const Mode& m) {
    if (m.i3 == 0) out[m.index] = f[m.index];
  });
  return out;
}

VectorField vertical_average(const VectorField& f) {
  std::vector<SpectralField> comps;
  for (int i = 0; i < f.size(); ++i) comps.push_back(vertical_average(f[i]));
  return VectorField(std::move(comps));
}

}  // namespace hypervisc
