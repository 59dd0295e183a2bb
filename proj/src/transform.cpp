// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#include "hypervisc/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace hypervisc {

namespace {

std::atomic<bool> g_deterministic{true};

class FftPlans {
 public:
  FftPlans(int n1, int n2, int n3, unsigned flags) {
    const std::size_t nr = static_cast<std::size_t>(n1) * n2 * n3;
    const std::size_t nc = static_cast<std::size_t>(n1 / 2 + 1) * n2 * n3;
    RealBuffer r(nr);
    ComplexBuffer c(nc);
    auto* cp = reinterpret_cast<fftw_complex*>(c.data());
    // FFTW's first dimension is the slowest: storage is [z][y][x].
    r2c_ = fftw_plan_dft_r2c_3d(n3, n2, n1, r.data(), cp, flags);
    c2r_ = fftw_plan_dft_c2r_3d(n3, n2, n1, cp, r.data(), flags);
    if (r2c_ == nullptr || c2r_ == nullptr) throw SolverError("FFTW planning failed");
  }
  ~FftPlans() {
    fftw_destroy_plan(r2c_);
    fftw_destroy_plan(c2r_);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  fftw_plan r2c() const { return r2c_; }
  fftw_plan c2r() const { return c2r_; }

 private:
  fftw_plan r2c_;
  fftw_plan c2r_;
};

// The FFTW planner is not thread-safe; executing an existing plan on new
// arrays is.
std::mutex g_planner_mutex;

std::shared_ptr<const FftPlans> plans_for(const Grid& g) {
  using Key = std::tuple<int, int, int, unsigned>;
  static std::map<Key, std::shared_ptr<const FftPlans>> cache;
  const unsigned flags = g_deterministic.load() ? FFTW_ESTIMATE : FFTW_MEASURE;
  const Key key{g.n1(), g.n2(), g.n3(), flags};
  std::lock_guard lock(g_planner_mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_shared<FftPlans>(g.n1(), g.n2(), g.n3(), flags)).first;
  }
  return it->second;
}

}  // namespace

void set_deterministic_transforms(bool deterministic) { g_deterministic.store(deterministic); }
bool deterministic_transforms() { return g_deterministic.load(); }

namespace detail {

void to_spectral(std::span<const double> samples, SpectralField& out) {
  const Grid& g = out.grid();
  const auto plans = plans_for(g);
  RealBuffer scratch(samples.begin(), samples.end());
  auto c = out.coeffs();
  fftw_execute_dft_r2c(plans->r2c(), scratch.data(), reinterpret_cast<fftw_complex*>(c.data()));
  const double scale = 1.0 / static_cast<double>(g.physical_size());
  for (auto& v : c) v *= scale;
}

void to_physical(const SpectralField& f, std::span<double> out) {
  const auto plans = plans_for(f.grid());
  ComplexBuffer scratch(f.coeffs().begin(), f.coeffs().end());
  if (reinterpret_cast<std::uintptr_t>(out.data()) % 64 == 0) {
    fftw_execute_dft_c2r(plans->c2r(), reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
    return;
  }
  RealBuffer tmp(out.size());
  fftw_execute_dft_c2r(plans->c2r(), reinterpret_cast<fftw_complex*>(scratch.data()), tmp.data());
  std::copy(tmp.begin(), tmp.end(), out.begin());
}

}  // namespace detail

SpectralField forward_transform(const Grid& grid, std::span<const double> samples) {
  if (samples.size() != grid.physical_size()) {
    throw InvalidArgument("sample count " + std::to_string(samples.size()) + " does not match grid size " +
                          std::to_string(grid.physical_size()));
  }
  SpectralField out(grid);
  detail::to_spectral(samples, out);
  return out;
}

std::vector<double> inverse_transform(const SpectralField& f) {
  const double scale = std::max(max_abs(f), 1e-300);
  if (hermitian_defect(f) > 1e-10 * scale) {
    throw InvalidArgument("inverse_transform: coefficients are not Hermitian-symmetric");
  }
  SpectralField sym = f;
  enforce_hermitian(sym);
  std::vector<double> out(f.grid().physical_size());
  detail::to_physical(sym, out);
  return out;
}

}  // namespace hypervisc
