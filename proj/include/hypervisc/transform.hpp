// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_TRANSFORM_HPP
#define HYPERVISC_TRANSFORM_HPP

#include <span>
#include <vector>

#include "hypervisc/spectral_field.hpp"

namespace hypervisc {

/// Coefficients normalized so that a constant field 1 has coeff(0) = 1:
///   f(k) = 1/N sum_m f(x_m) exp(-i kappa(k) . x_m).
SpectralField forward_transform(const Grid& grid, std::span<const double> samples);

/// Collocation samples of a Hermitian field. Throws InvalidArgument when the
/// input violates Hermitian symmetry beyond round-off.
std::vector<double> inverse_transform(const SpectralField& f);

/// Planner behaviour. Deterministic mode uses estimate-only FFTW plans, which
/// are identical from run to run; the default mode may measure candidate
/// plans, which can change bit-level results between processes.
void set_deterministic_transforms(bool deterministic);
bool deterministic_transforms();

namespace detail {

// Unchecked fast paths used by the pseudo-spectral kernels. `out` must be
// sized physical_size() / spectral_size() respectively.
void to_physical(const SpectralField& f, std::span<double> out);
void to_spectral(std::span<const double> samples, SpectralField& out);

}  // namespace detail

}  // namespace hypervisc

#endif  // HYPERVISC_TRANSFORM_HPP
