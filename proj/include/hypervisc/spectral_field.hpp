// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_SPECTRAL_FIELD_HPP
#define HYPERVISC_SPECTRAL_FIELD_HPP

#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

#include "hypervisc/grid.hpp"

namespace hypervisc {

using Complex = std::complex<double>;

/// 64-byte aligned allocator; FFT plans are created on buffers with the
/// same alignment so they can be reused on any field.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t alignment{64};

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), alignment)); }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using ComplexBuffer = std::vector<Complex, AlignedAllocator<Complex>>;
using RealBuffer = std::vector<double, AlignedAllocator<double>>;

/// Truncated Fourier coefficients of a real scalar field.
class SpectralField {
 public:
  explicit SpectralField(Grid grid);

  const Grid& grid() const { return grid_; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }

  /// Coefficient at any logical index; k1 < 0 is read through Hermitian symmetry.
  Complex coeff(const WaveIndex& k) const;
  /// Writes `value` at k and its conjugate at -k.
  void set_mode(const WaveIndex& k, Complex value);

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  /// this += s * other
  SpectralField& axpy(double s, const SpectralField& other);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  Grid grid_;
  ComplexBuffer coeffs_;
};

/// Horizontal (2 components) or full (3 components) velocity on one grid.
class VectorField {
 public:
  /// Empty placeholder; holds no components until assigned.
  VectorField() = default;
  VectorField(Grid grid, int components);
  explicit VectorField(std::vector<SpectralField> components);

  int size() const { return static_cast<int>(components_.size()); }
  bool empty() const { return components_.empty(); }
  const Grid& grid() const;
  SpectralField& operator[](int i) { return components_[static_cast<std::size_t>(i)]; }
  const SpectralField& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double s);
  VectorField& axpy(double s, const VectorField& other);

  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(double s, VectorField a) { return a *= s; }

 private:
  std::vector<SpectralField> components_;
};

void require_same_grid(const SpectralField& a, const SpectralField& b);
void require_same_shape(const VectorField& a, const VectorField& b);

/// L2 inner product normalized by the domain volume: sum over the full
/// logical index set of Re(a(k) conj(b(k))).
double inner(const SpectralField& a, const SpectralField& b);
double inner(const VectorField& a, const VectorField& b);
double norm_sq(const SpectralField& f);
double norm_sq(const VectorField& f);
double max_abs(const SpectralField& f);
double max_abs(const VectorField& f);

enum class Parity { Even, Odd };

/// Zero every coefficient outside the dealiasing band.
SpectralField dealias(SpectralField f);
VectorField dealias(VectorField f);

/// Even or odd part in z: (f(k_H, k3) +- f(k_H, -k3)) / 2.
SpectralField symmetrize_parity(const SpectralField& f, Parity parity);
VectorField symmetrize_parity(const VectorField& f, Parity parity);
/// Relative L2 size of the part of `f` with the opposite parity.
double parity_defect(const VectorField& f, Parity parity);

/// Largest |f(k) - conj f(-k)| on the self-conjugate planes (k1 = 0 and k1 = n1/2).
double hermitian_defect(const SpectralField& f);
/// Replace f by its Hermitian part on the self-conjugate planes.
void enforce_hermitian(SpectralField& f);

}  // namespace hypervisc

#endif  // HYPERVISC_SPECTRAL_FIELD_HPP
