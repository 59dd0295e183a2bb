// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/profiles.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace hypervisc {

namespace {

constexpr double pi = std::numbers::pi;

// Clear round-off outside the band and keep the stored planes Hermitian.
VectorField tidy(VectorField f) {
  for (int c = 0; c < f.size(); ++c) enforce_hermitian(f[c]);
  return dealias(std::move(f));
}

}  // namespace

Constraint constraint_for(Equation e) {
  return e == Equation::NavierStokes ? Constraint::Solenoidal3D : Constraint::Hydrostatic2D;
}

VectorField random_field(const Grid& grid, Constraint constraint, double spectrum_profile, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int ncomp = constraint == Constraint::Solenoidal3D ? 3 : 2;
  VectorField f(grid, ncomp);
  grid.for_each_mode([&](const Mode& m) {
    const double amp = std::pow(1.0 + m.abs_sq(), -0.5 * spectrum_profile);
    for (int c = 0; c < ncomp; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      f[c][m.index] = m.retained && m.index != 0 ? amp * Complex(re, im) : Complex(0.0);
    }
  });
  f = tidy(std::move(f));
  if (constraint == Constraint::Solenoidal3D) {
    f = leray_project(f);
  } else {
    f = hydrostatic_project(symmetrize_parity(f, Parity::Even));
  }
  const double n = std::sqrt(norm_sq(f));
  if (n > 0.0) f *= 1.0 / n;
  return f;
}

VectorField ensemble_member(const Grid& grid, const EnsembleSpec& spec, int member) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed & 0xFFFFFFFFu), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(member)};
  std::uint64_t s[1];
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  s[0] = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return random_field(grid, spec.constraint, spec.spectrum_profile, s[0]);
}

VectorField beltrami_field(const Grid& grid, double a) {
  std::vector<SpectralField> c;
  c.push_back(sample_field(grid, [&](double, double y, double z) {
    return a * std::sin(2 * pi * z) + a * std::cos(2 * pi * y);
  }));
  c.push_back(sample_field(grid, [&](double x, double, double z) {
    return a * std::sin(2 * pi * x) + a * std::cos(2 * pi * z);
  }));
  c.push_back(sample_field(grid, [&](double x, double y, double) {
    return a * std::sin(2 * pi * y) + a * std::cos(2 * pi * x);
  }));
  return tidy(VectorField(std::move(c)));
}

VectorField taylor_green_ns(const Grid& grid, double a) {
  std::vector<SpectralField> c;
  c.push_back(sample_field(grid, [&](double x, double y, double z) {
    return a * std::cos(2 * pi * x) * std::sin(2 * pi * y) * std::sin(pi * z);
  }));
  c.push_back(sample_field(grid, [&](double x, double y, double z) {
    return -a * std::sin(2 * pi * x) * std::cos(2 * pi * y) * std::sin(pi * z);
  }));
  c.emplace_back(grid);
  return tidy(VectorField(std::move(c)));
}

VectorField taylor_green_pe(const Grid& grid, double a) {
  std::vector<SpectralField> c;
  c.push_back(sample_field(grid, [&](double x, double y, double) {
    return -a * std::cos(2 * pi * x) * std::sin(2 * pi * y);
  }));
  c.push_back(sample_field(grid, [&](double x, double y, double) {
    return a * std::sin(2 * pi * x) * std::cos(2 * pi * y);
  }));
  return tidy(VectorField(std::move(c)));
}

VectorField baroclinic_pe(const Grid& grid, double a) {
  std::vector<SpectralField> c;
  c.push_back(sample_field(grid, [&](double x, double, double z) {
    return a * std::cos(2 * pi * x) * std::cos(pi * z);
  }));
  c.emplace_back(grid);
  return tidy(VectorField(std::move(c)));
}

VectorField single_mode(const Grid& grid, Equation equation, const WaveIndex& k, double amplitude) {
  if (!grid.retained(k)) throw InvalidArgument("single_mode: wave index outside the retained band");
  if (k == WaveIndex{}) throw InvalidArgument("single_mode: k must be nonzero");
  const double kx = 2 * pi * k.k1;
  const double ky = 2 * pi * k.k2;
  const double kz = pi * k.k3;
  const Complex half(0.5 * amplitude, 0.0);
  if (equation == Equation::NavierStokes) {
    // e = kappa x z_hat, or kappa x x_hat when kappa is vertical.
    double e[3];
    if (kx != 0.0 || ky != 0.0) {
      e[0] = ky;
      e[1] = -kx;
      e[2] = 0.0;
    } else {
      e[0] = 0.0;
      e[1] = kz;
      e[2] = 0.0;
    }
    const double n = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    VectorField f(grid, 3);
    for (int c = 0; c < 3; ++c) f[c].set_mode(k, half * (e[c] / n));
    return f;
  }
  double e[2] = {1.0, 0.0};
  if (kx != 0.0 || ky != 0.0) {
    const double n = std::hypot(kx, ky);
    e[0] = -ky / n;
    e[1] = kx / n;
  }
  VectorField f(grid, 2);
  for (int c = 0; c < 2; ++c) f[c].set_mode(k, half * e[c]);
  // cos(kappa . x) is not even in z unless k3 = 0; keep its even part and
  // rescale to the requested amplitude.
  f = symmetrize_parity(f, Parity::Even);
  if (k.k3 != 0) f *= 2.0;
  return hydrostatic_project(f);
}

}  // namespace hypervisc
