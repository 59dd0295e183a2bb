// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_PROFILES_HPP
#define HYPERVISC_PROFILES_HPP

#include <cstdint>

#include "hypervisc/dynamics.hpp"

namespace hypervisc {

enum class Constraint { Solenoidal3D, Hydrostatic2D };

Constraint constraint_for(Equation e);

/// Seeded random ensemble description.
struct EnsembleSpec {
  int count = 1;
  double spectrum_profile = 1.5;
  std::uint64_t seed = 0;
  Constraint constraint = Constraint::Solenoidal3D;
};

/// Mean-free random field with independent complex Gaussian coefficients of
/// size (1+|kappa|^2)^(-profile/2), dealiased, projected onto the
/// constraint and scaled to unit L2 norm. Deterministic in (grid, seed).
VectorField random_field(const Grid& grid, Constraint constraint, double spectrum_profile, std::uint64_t seed);
/// Member `member` of the ensemble; members use independent streams.
VectorField ensemble_member(const Grid& grid, const EnsembleSpec& spec, int member);

/// ABC flow with A = B = C = amplitude and wavenumber 2 pi; curl u = 2 pi u.
VectorField beltrami_field(const Grid& grid, double amplitude);
/// (a cos X sin Y sin Z, -a sin X cos Y sin Z, 0), X = 2 pi x, Y = 2 pi y, Z = pi z.
VectorField taylor_green_ns(const Grid& grid, double amplitude);
/// z-independent (-a cos X sin Y, a sin X cos Y).
VectorField taylor_green_pe(const Grid& grid, double amplitude);
/// (a cos(2 pi x) cos(pi z), 0): even, mean-free in z, nonzero w(v).
VectorField baroclinic_pe(const Grid& grid, double amplitude);
/// amplitude * e * cos(kappa . x) with e a unit vector chosen compatible with
/// the constraint of `equation`.
VectorField single_mode(const Grid& grid, Equation equation, const WaveIndex& k, double amplitude);

/// Build a field from physical samples of a callable f(x, y, z) -> value.
template <class F>
SpectralField sample_field(const Grid& grid, F&& f);

}  // namespace hypervisc

#include "hypervisc/transform.hpp"

namespace hypervisc {

template <class F>
SpectralField sample_field(const Grid& grid, F&& f) {
  std::vector<double> samples(grid.physical_size());
  for (int m3 = 0; m3 < grid.n3(); ++m3) {
    for (int m2 = 0; m2 < grid.n2(); ++m2) {
      for (int m1 = 0; m1 < grid.n1(); ++m1) {
        samples[grid.physical_index(m1, m2, m3)] = f(grid.x(m1), grid.y(m2), grid.z(m3));
      }
    }
  }
  return forward_transform(grid, samples);
}

}  // namespace hypervisc

#endif  // HYPERVISC_PROFILES_HPP
