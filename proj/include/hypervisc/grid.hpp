// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_GRID_HPP
#define HYPERVISC_GRID_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypervisc {

/// Rejected input: dimension mismatches, constraint violations, bad parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure during a run (non-finite values, blow-up guard).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rational {
  long num = 1;
  long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  /// Accepts "p/q" or an integer literal.
  static Rational parse(const std::string& text);

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Signed Fourier index. The physical wavevector is (2 pi k1, 2 pi k2, pi k3)
/// because the domain is (0,1) x (0,1) x (-1,1).
struct WaveIndex {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;

  friend bool operator==(const WaveIndex&, const WaveIndex&) = default;
};

/// Per-mode data handed to Grid::for_each_mode. `kx, ky, kz` are derivative
/// wavenumbers (zero on Nyquist indices so that odd operators keep real
/// fields real); `ax, ay, az` are wavenumber magnitudes used by symbols and
/// norm weights.
struct Mode {
  std::size_t index;
  int i1, i2, i3;
  double kx, ky, kz;
  double ax, ay, az;
  double multiplicity;  // 1 or 2: how many logical modes the stored entry stands for
  bool retained;        // inside the dealiasing band

  double abs_sq() const { return ax * ax + ay * ay + az * az; }
  double abs_h_sq() const { return ax * ax + ay * ay; }
};

/// Collocation grid and truncated Fourier index set on the periodic box.
///
/// Spectral storage is real-to-complex along x: entries are laid out as
/// [i3][i2][i1] with i1 in [0, n1/2], i.e. only k1 >= 0 is stored and the
/// k1 < 0 half follows from Hermitian symmetry. Physical samples are laid
/// out as [m3][m2][m1] with x fastest. The vertical collocation points are
/// z_m = 2m/n3 wrapped into [-1, 1).
class Grid {
 public:
  Grid(int n1, int n2, int n3, Rational dealias = {2, 3});

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int n3() const { return n3_; }
  int n1_half() const { return n1_ / 2 + 1; }
  const Rational& dealias_fraction() const { return dealias_; }

  std::size_t physical_size() const;
  std::size_t spectral_size() const;

  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i3) * n2_ + i2) * static_cast<std::size_t>(n1_half()) + i1;
  }
  std::size_t physical_index(int m1, int m2, int m3) const {
    return (static_cast<std::size_t>(m3) * n2_ + m2) * static_cast<std::size_t>(n1_) + m1;
  }

  int k2_of(int i2) const { return signed_index(i2, n2_); }
  int k3_of(int i3) const { return signed_index(i3, n3_); }
  int i2_of(int k2) const { return k2 < 0 ? k2 + n2_ : k2; }
  int i3_of(int k3) const { return k3 < 0 ? k3 + n3_ : k3; }
  /// Storage index of -k along the y / z axes.
  int mirror2(int i2) const { return i2 == 0 ? 0 : n2_ - i2; }
  int mirror3(int i3) const { return i3 == 0 ? 0 : n3_ - i3; }

  /// True when |k_i| <= n_i / 2 for all i.
  bool contains(const WaveIndex& k) const;
  /// True when no |k_i| exceeds dealias_fraction * n_i / 2.
  bool retained(const WaveIndex& k) const;

  double x(int m1) const { return static_cast<double>(m1) / n1_; }
  double y(int m2) const { return static_cast<double>(m2) / n2_; }
  double z(int m3) const;

  double cell_volume() const;
  static constexpr double domain_volume = 2.0;

  template <class F>
  void for_each_mode(F&& f) const {
    const int nh = n1_half();
    for (int i3 = 0; i3 < n3_; ++i3) {
      for (int i2 = 0; i2 < n2_; ++i2) {
        for (int i1 = 0; i1 < nh; ++i1) {
          f(Mode{index(i1, i2, i3), i1, i2, i3, tables_->kx[i1], tables_->ky[i2], tables_->kz[i3],
                 tables_->ax[i1], tables_->ay[i2], tables_->az[i3], tables_->mult[i1],
                 tables_->keep1[i1] && tables_->keep2[i2] && tables_->keep3[i3]});
        }
      }
    }
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.n3_ == b.n3_ && a.dealias_ == b.dealias_;
  }

 private:
  static int signed_index(int i, int n) { return i <= n / 2 ? (i == n / 2 ? -n / 2 : i) : i - n; }

  struct Tables {
    std::vector<double> kx, ky, kz, ax, ay, az, mult;
    std::vector<bool> keep1, keep2, keep3;
  };

  int n1_, n2_, n3_;
  Rational dealias_;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace hypervisc

#endif  // HYPERVISC_GRID_HPP
