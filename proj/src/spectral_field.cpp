// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace hypervisc {

SpectralField::SpectralField(Grid grid) : grid_(std::move(grid)), coeffs_(grid_.spectral_size()) {}

Complex SpectralField::coeff(const WaveIndex& k) const {
  if (!grid_.contains(k)) throw InvalidArgument("wave index outside the grid");
  if (k.k1 < 0) return std::conj(coeff({-k.k1, -k.k2, -k.k3}));
  return coeffs_[grid_.index(k.k1, grid_.i2_of(k.k2), grid_.i3_of(k.k3))];
}

void SpectralField::set_mode(const WaveIndex& k, Complex value) {
  if (!grid_.contains(k)) throw InvalidArgument("wave index outside the grid");
  const WaveIndex m{-k.k1, -k.k2, -k.k3};
  const auto at = [&](const WaveIndex& q) -> Complex& {
    return coeffs_[grid_.index(q.k1, grid_.i2_of(q.k2), grid_.i3_of(q.k3))];
  };
  const int half = grid_.n1() / 2;
  if (k.k1 < 0 && k.k1 != -half) {
    at(m) = std::conj(value);
    return;
  }
  if (k.k1 > 0 && k.k1 != half) {
    at(k) = value;
    return;
  }
  // k1 = 0 or Nyquist: both k and -k live in the stored plane.
  const WaveIndex ks{std::abs(k.k1), k.k1 < 0 ? -k.k2 : k.k2, k.k1 < 0 ? -k.k3 : k.k3};
  const Complex vs = k.k1 < 0 ? std::conj(value) : value;
  const WaveIndex ms{ks.k1, -ks.k2, -ks.k3};
  Complex& a = at(ks);
  Complex& b = at(ms);
  if (&a == &b) {
    a = Complex(vs.real(), 0.0);
  } else {
    a = vs;
    b = std::conj(vs);
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
  return *this;
}

VectorField::VectorField(Grid grid, int components) {
  if (components != 2 && components != 3) {
    throw InvalidArgument("vector fields have 2 or 3 components");
  }
  components_.assign(static_cast<std::size_t>(components), SpectralField(std::move(grid)));
}

VectorField::VectorField(std::vector<SpectralField> components) : components_(std::move(components)) {
  if (components_.size() != 2 && components_.size() != 3) {
    throw InvalidArgument("vector fields have 2 or 3 components");
  }
  for (const auto& c : components_) require_same_grid(components_.front(), c);
}

const Grid& VectorField::grid() const {
  if (components_.empty()) throw InvalidArgument("empty vector field has no grid");
  return components_.front().grid();
}

VectorField& VectorField::operator+=(const VectorField& other) {
  require_same_shape(*this, other);
  for (int i = 0; i < size(); ++i) (*this)[i] += other[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  require_same_shape(*this, other);
  for (int i = 0; i < size(); ++i) (*this)[i] -= other[i];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : components_) c *= s;
  return *this;
}

VectorField& VectorField::axpy(double s, const VectorField& other) {
  require_same_shape(*this, other);
  for (int i = 0; i < size(); ++i) (*this)[i].axpy(s, other[i]);
  return *this;
}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("fields live on different grids");
}

void require_same_shape(const VectorField& a, const VectorField& b) {
  if (a.size() != b.size()) throw InvalidArgument("vector fields differ in component count");
  require_same_grid(a[0], b[0]);
}

double inner(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  double sum = 0.0;
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  a.grid().for_each_mode([&](const Mode& m) {
    const Complex x = ca[m.index];
    const Complex y = cb[m.index];
    sum += m.multiplicity * (x.real() * y.real() + x.imag() * y.imag());
  });
  return sum;
}

double inner(const VectorField& a, const VectorField& b) {
  require_same_shape(a, b);
  double sum = 0.0;
  for (int i = 0; i < a.size(); ++i) sum += inner(a[i], b[i]);
  return sum;
}

double norm_sq(const SpectralField& f) { return inner(f, f); }
double norm_sq(const VectorField& f) { return inner(f, f); }

double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

double max_abs(const VectorField& f) {
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i) m = std::max(m, max_abs(f[i]));
  return m;
}

SpectralField dealias(SpectralField f) {
  auto c = f.coeffs();
  f.grid().for_each_mode([&](const Mode& m) {
    if (!m.retained) c[m.index] = 0.0;
  });
  return f;
}

VectorField dealias(VectorField f) {
  for (int i = 0; i < f.size(); ++i) f[i] = dealias(std::move(f[i]));
  return f;
}

SpectralField symmetrize_parity(const SpectralField& f, Parity parity) {
  const Grid& g = f.grid();
  SpectralField out(g);
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  const auto in = f.coeffs();
  auto o = out.coeffs();
  g.for_each_mode([&](const Mode& m) {
    const Complex mirror = in[g.index(m.i1, m.i2, g.mirror3(m.i3))];
    o[m.index] = 0.5 * (in[m.index] + sign * mirror);
  });
  return out;
}

VectorField symmetrize_parity(const VectorField& f, Parity parity) {
  std::vector<SpectralField> comps;
  for (int i = 0; i < f.size(); ++i) comps.push_back(symmetrize_parity(f[i], parity));
  return VectorField(std::move(comps));
}

double parity_defect(const VectorField& f, Parity parity) {
  const double total = norm_sq(f);
  if (total == 0.0) return 0.0;
  const Parity other = parity == Parity::Even ? Parity::Odd : Parity::Even;
  return std::sqrt(norm_sq(symmetrize_parity(f, other)) / total);
}

namespace {

template <class F>
void for_each_self_conjugate_pair(const Grid& g, F&& f) {
  for (int i1 : {0, g.n1() / 2}) {
    for (int i3 = 0; i3 < g.n3(); ++i3) {
      for (int i2 = 0; i2 < g.n2(); ++i2) {
        f(g.index(i1, i2, i3), g.index(i1, g.mirror2(i2), g.mirror3(i3)));
      }
    }
  }
}

}  // namespace

double hermitian_defect(const SpectralField& f) {
  double worst = 0.0;
  const auto c = f.coeffs();
  for_each_self_conjugate_pair(f.grid(), [&](std::size_t a, std::size_t b) {
    worst = std::max(worst, std::abs(c[a] - std::conj(c[b])));
  });
  return worst;
}

void enforce_hermitian(SpectralField& f) {
  auto c = f.coeffs();
  for_each_self_conjugate_pair(f.grid(), [&](std::size_t a, std::size_t b) {
    if (a > b) return;
    const Complex h = 0.5 * (c[a] + std::conj(c[b]));
    c[a] = h;
    c[b] = std::conj(h);
  });
}

}  // namespace hypervisc
