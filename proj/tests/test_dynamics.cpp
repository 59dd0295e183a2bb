// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "hypervisc/profiles.hpp"
#include "hypervisc/transform.hpp"
#include "oracles.hpp"

using namespace hypervisc;
using oracle::pi;

namespace {

double max_diff(const SpectralField& f, const oracle::Coeffs& ref) {
  double err = 0.0;
  oracle::for_each_index(f.grid(), [&](const WaveIndex& k) {
    const auto it = ref.find({k.k1, k.k2, k.k3});
    const Complex r = it == ref.end() ? Complex(0.0) : it->second;
    err = std::max(err, std::abs(f.coeff(k) - r));
  });
  return err;
}

}  // namespace

TEST_CASE("NS advection equals the O(N^2) convolution oracle on 8^3") {
  const Grid g(8, 8, 8);
  const VectorField u = random_field(g, Constraint::Solenoidal3D, 1.0, 17);
  const VectorField n = advection_ns(u);
  std::vector<oracle::Coeffs> comps;
  for (int c = 0; c < 3; ++c) comps.push_back(oracle::sparse(u[c]));
  const auto keep = [&](int k1, int k2, int k3) { return g.retained({k1, k2, k3}); };
  double err = 0.0;
  double scale = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto ref = oracle::divergence_of_products(comps, comps[static_cast<std::size_t>(i)], keep);
    err = std::max(err, max_diff(n[i], ref));
    scale = std::max(scale, max_abs(n[i]));
  }
  CHECK(scale > 0.0);
  CHECK(err <= 1e-12 * scale);
}

TEST_CASE("PE advection equals the O(N^2) convolution oracle on 8^3") {
  const Grid g(8, 8, 8);
  const VectorField v = random_field(g, Constraint::Hydrostatic2D, 1.0, 23);
  const auto v1 = oracle::sparse(v[0]);
  const auto v2 = oracle::sparse(v[1]);
  // w(k) = -(i k1 v1 + i k2 v2) / (i k3) for k3 != 0; mean fixed by w(-1) = 0.
  oracle::Coeffs w;
  std::map<std::pair<int, int>, Complex> mean;
  oracle::for_each_index(g, [&](const WaveIndex& k) {
    if (k.k3 == 0) return;
    const auto get = [&](const oracle::Coeffs& c) {
      const auto it = c.find({k.k1, k.k2, k.k3});
      return it == c.end() ? Complex(0.0) : it->second;
    };
    const Complex div = Complex(0.0, oracle::kappa1(k.k1)) * get(v1) + Complex(0.0, oracle::kappa1(k.k2)) * get(v2);
    const Complex wk = -div / Complex(0.0, oracle::kappa3(k.k3));
    if (wk == Complex(0.0)) return;
    w[{k.k1, k.k2, k.k3}] = wk;
    mean[{k.k1, k.k2}] -= (k.k3 % 2 == 0 ? 1.0 : -1.0) * wk;
  });
  for (const auto& [kh, m] : mean) w[{kh.first, kh.second, 0}] = m;

  const SpectralField wl = vertical_velocity(v);
  CHECK(max_diff(wl, w) <= 1e-12 * max_abs(wl));

  const VectorField n = advection_pe(v);
  const auto keep = [&](int k1, int k2, int k3) { return g.retained({k1, k2, k3}); };
  const std::vector<oracle::Coeffs> adv{v1, v2, w};
  const double scale = max_abs(n);
  CHECK(scale > 0.0);
  CHECK(max_diff(n[0], oracle::divergence_of_products(adv, v1, keep)) <= 1e-12 * scale);
  CHECK(max_diff(n[1], oracle::divergence_of_products(adv, v2, keep)) <= 1e-12 * scale);
}

TEST_CASE("vertical velocity of the baroclinic example matches quadrature") {
  // v = (cos(2 pi x) cos(pi z), 0): w(x, z) = -int_{-1}^{z} d_x v1 dz'
  const Grid g(16, 16, 16);
  const VectorField v = baroclinic_pe(g, 1.0);
  const auto w = inverse_transform(vertical_velocity(v));
  std::vector<double> xq;
  std::vector<double> wq;
  oracle::gauss_legendre(24, xq, wq);
  double err = 0.0;
  double top = 0.0;
  for (int m3 = 0; m3 < g.n3(); ++m3) {
    const double z = g.z(m3);
    for (int m1 = 0; m1 < g.n1(); ++m1) {
      const double x = g.x(m1);
      // map [-1, 1] onto [-1, z]
      double integral = 0.0;
      for (std::size_t q = 0; q < xq.size(); ++q) {
        const double s = -1.0 + 0.5 * (z + 1.0) * (xq[q] + 1.0);
        integral += 0.5 * (z + 1.0) * wq[q] * (-2.0 * pi * std::sin(2 * pi * x) * std::cos(pi * s));
      }
      for (int m2 = 0; m2 < g.n2(); ++m2) err = std::max(err, std::abs(w[g.physical_index(m1, m2, m3)] + integral));
    }
  }
  CHECK(err <= 1e-10);
  // w is odd in z and vanishes at z = -1 (the m3 = n3/2 sample); spectral
  // evaluation at z = +1 equals z = -1 by periodicity.
  for (int m1 = 0; m1 < g.n1(); ++m1) top = std::max(top, std::abs(w[g.physical_index(m1, 0, g.n3() / 2)]));
  CHECK(top <= 1e-10);
  std::vector<SpectralField> wv{vertical_velocity(v), SpectralField(g)};
  CHECK(parity_defect(VectorField(std::move(wv)), Parity::Odd) <= 1e-14);
}

TEST_CASE("vertical velocity rejects a divergent vertical mean") {
  const Grid g(8, 8, 8);
  VectorField v(g, 2);
  v[0].set_mode({1, 0, 0}, 0.5);  // cos(2 pi x): div_H of the mean is nonzero
  CHECK_THROWS_AS(vertical_velocity(v), InvalidArgument);
}

TEST_CASE("Beltrami and Taylor-Green annihilate the projected nonlinearity") {
  const Grid g(16, 16, 16);
  const VectorField b = beltrami_field(g, 1.0);
  CHECK(std::sqrt(norm_sq(nonlinearity_ns(b))) <= 1e-12);
  CHECK(std::sqrt(norm_sq(advection_ns(b))) > 1.0);  // the unprojected term is a pure gradient
  const VectorField tg = taylor_green_pe(g, 1.0);
  CHECK(std::sqrt(norm_sq(nonlinearity_pe(tg))) <= 1e-12);
}

TEST_CASE("Beltrami pressure is -|u|^2/2") {
  const Grid g(16, 16, 16);
  const VectorField b = beltrami_field(g, 1.0);
  const SpectralField p = recover_pressure_ns(b);
  std::vector<double> e(g.physical_size(), 0.0);
  for (int c = 0; c < 3; ++c) {
    const auto uc = inverse_transform(b[c]);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= 0.5 * uc[i] * uc[i];
  }
  SpectralField ref = forward_transform(g, e);
  ref[0] = 0.0;
  CHECK(std::sqrt(norm_sq(p - ref)) <= 1e-12);
}

TEST_CASE("projected nonlinearities conserve energy") {
  const Grid g(16, 16, 16);
  const VectorField u = random_field(g, Constraint::Solenoidal3D, 1.5, 3);
  CHECK(std::abs(inner(nonlinearity_ns(u), u)) <= 1e-12 * std::sqrt(norm_sq(nonlinearity_ns(u))));
  const VectorField v = random_field(g, Constraint::Hydrostatic2D, 1.5, 4);
  CHECK(std::abs(inner(nonlinearity_pe(v), v)) <= 1e-12 * std::sqrt(norm_sq(nonlinearity_pe(v))));
}

TEST_CASE("state validation") {
  const Grid g(8, 8, 8);
  VectorField u(g, 3);
  u[0].set_mode({1, 0, 0}, 0.5);  // cos(2 pi x) x_hat has nonzero divergence
  CHECK_THROWS_AS(validate_state(State{Equation::NavierStokes, u, 0.0}), InvalidArgument);
  CHECK_NOTHROW(validate_state(State{Equation::NavierStokes, random_field(g, Constraint::Solenoidal3D, 1.5, 1), 0.0}));
  CHECK_THROWS_AS(validate_state(State{Equation::Primitive, u, 0.0}), InvalidArgument);
  CHECK(parse_equation("pe") == Equation::Primitive);
  CHECK_THROWS_AS(parse_equation("euler"), InvalidArgument);
}

TEST_CASE("random fields satisfy their constraints and are reproducible") {
  const Grid g(16, 16, 16);
  for (Constraint c : {Constraint::Solenoidal3D, Constraint::Hydrostatic2D}) {
    const VectorField a = random_field(g, c, 1.5, 99);
    const VectorField b = random_field(g, c, 1.5, 99);
    CHECK(norm_sq(a - b) == 0.0);
    CHECK(norm_sq(a) == doctest::Approx(1.0).epsilon(1e-14));
    const Equation e = c == Constraint::Solenoidal3D ? Equation::NavierStokes : Equation::Primitive;
    CHECK(constraint_defect(State{e, a, 0.0}) <= 1e-12);
  }
  EnsembleSpec spec;
  CHECK(norm_sq(ensemble_member(g, spec, 0) - ensemble_member(g, spec, 1)) > 0.1);
}

TEST_CASE("forcing validation") {
  const Grid g(8, 8, 8);
  VectorField bad(g, 3);
  bad[0].set_mode({1, 0, 0}, 0.5);
  CHECK_THROWS_AS(ForcingSpec::steady(bad).validate(Equation::NavierStokes, g), InvalidArgument);
  CHECK_THROWS_AS(ForcingSpec::steady(taylor_green_ns(g, 1.0)).validate(Equation::Primitive, g), InvalidArgument);
  const ForcingSpec m = ForcingSpec::modulated(taylor_green_ns(g, 1.0), 2.0);
  CHECK(m.envelope(0.3) == doctest::Approx(std::cos(0.6)));
}
