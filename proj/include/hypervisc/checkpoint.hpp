// Copyright 2026 The hypervisc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPERVISC_CHECKPOINT_HPP
#define HYPERVISC_CHECKPOINT_HPP

#include <filesystem>

#include "hypervisc/dynamics.hpp"

namespace hypervisc {

/// On-disk checkpoint: one little-endian IEEE-754 binary file per component
/// (`u0.bin`, `u1.bin`, ...) holding interleaved (re, im) doubles in spectral
/// storage order [i3][i2][i1], i1 in [0, n1/2], plus `manifest.json`:
///
///   {"format": "hypervisc-checkpoint", "format_version": 1,
///    "endianness": "little", "equation": "ns"|"pe", "time": t,
///    "grid": {"n": [n1, n2, n3], "dealias": "2/3"},
///    "operator": {"variant": ..., "nu": ..., "epsilon": ..., "l": ...},
///    "layout": {"order": ["k3", "k2", "k1"], "shape": [n3, n2, n1/2+1],
///               "k1": "nonnegative", "value": "complex128 (re, im)",
///               "components": ["u0.bin", ...]}}
struct Checkpoint {
  State state;
  OperatorSpec op;
};

constexpr int kCheckpointFormatVersion = 1;

void write_checkpoint(const std::filesystem::path& dir, const State& state, const OperatorSpec& op);
Checkpoint read_checkpoint(const std::filesystem::path& dir);

}  // namespace hypervisc

#endif  // HYPERVISC_CHECKPOINT_HPP
