// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

namespace hypervisc {

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long n = std::stol(text, &used);
      if (used != text.size()) throw InvalidArgument("trailing characters");
      return {n, 1};
    }
    const std::string lhs = text.substr(0, slash);
    const std::string rhs = text.substr(slash + 1);
    const long n = std::stol(lhs, &used);
    if (used != lhs.size()) throw InvalidArgument("trailing characters");
    const long d = std::stol(rhs, &used);
    if (used != rhs.size() || d <= 0) throw InvalidArgument("bad denominator");
    return {n, d};
  } catch (const std::exception&) {
    throw InvalidArgument("not a rational number: '" + text + "'");
  }
}

namespace {

// keep |k| <= frac * n/2, evaluated in integers: 2 |k| den <= num n
bool inside_band(int k, int n, const Rational& frac) {
  return 2L * std::abs(k) * frac.den <= frac.num * static_cast<long>(n);
}

}  // namespace

Grid::Grid(int n1, int n2, int n3, Rational dealias) : n1_(n1), n2_(n2), n3_(n3), dealias_(dealias) {
  for (int n : {n1, n2, n3}) {
    if (n < 4 || n % 2 != 0) {
      throw InvalidArgument("grid sizes must be even and >= 4, got " + std::to_string(n));
    }
  }
  if (dealias.num <= 0 || dealias.den <= 0 || dealias.num > dealias.den) {
    throw InvalidArgument("dealias fraction must lie in (0,1], got " + dealias.str());
  }

  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto t = std::make_shared<Tables>();
  const int nh = n1 / 2 + 1;
  for (int i1 = 0; i1 < nh; ++i1) {
    const bool nyquist = (i1 == n1 / 2);
    t->ax.push_back(two_pi * i1);
    t->kx.push_back(nyquist ? 0.0 : two_pi * i1);
    t->mult.push_back((i1 == 0 || nyquist) ? 1.0 : 2.0);
    t->keep1.push_back(inside_band(i1, n1, dealias));
  }
  for (int i2 = 0; i2 < n2; ++i2) {
    const int k = signed_index(i2, n2);
    t->ay.push_back(two_pi * std::abs(k));
    t->ky.push_back(i2 == n2 / 2 ? 0.0 : two_pi * k);
    t->keep2.push_back(inside_band(k, n2, dealias));
  }
  for (int i3 = 0; i3 < n3; ++i3) {
    const int k = signed_index(i3, n3);
    t->az.push_back(std::numbers::pi * std::abs(k));
    t->kz.push_back(i3 == n3 / 2 ? 0.0 : std::numbers::pi * k);
    t->keep3.push_back(inside_band(k, n3, dealias));
  }
  tables_ = std::move(t);
}

std::size_t Grid::physical_size() const {
  return static_cast<std::size_t>(n1_) * n2_ * n3_;
}

std::size_t Grid::spectral_size() const {
  return static_cast<std::size_t>(n1_half()) * n2_ * n3_;
}

bool Grid::contains(const WaveIndex& k) const {
  return std::abs(k.k1) <= n1_ / 2 && std::abs(k.k2) <= n2_ / 2 && std::abs(k.k3) <= n3_ / 2;
}

bool Grid::retained(const WaveIndex& k) const {
  return inside_band(k.k1, n1_, dealias_) && inside_band(k.k2, n2_, dealias_) &&
         inside_band(k.k3, n3_, dealias_);
}

double Grid::z(int m3) const {
  const double z = 2.0 * m3 / n3_;
  return m3 >= n3_ / 2 ? z - 2.0 : z;
}

double Grid::cell_volume() const {
  return domain_volume / static_cast<double>(physical_size());
}

}  // namespace hypervisc
