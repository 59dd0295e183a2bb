# Copyright 2026 The hypervisc Authors
# SPDX-License-Identifier: Apache-2.0
"""Spectral Navier-Stokes and primitive-equation solver with hyperviscosity.

Spectral fields are complex arrays of shape (components, n3, n2, n1 // 2 + 1);
three components mean Navier-Stokes, two the primitive equations.
"""

from ._core import (
    Grid,
    InvalidArgument,
    Operator,
    SolverError,
    beltrami,
    divergence,
    existence_window,
    forward,
    hydrostatic_project,
    inverse,
    leray_project,
    nonlinearity,
    norm_sq,
    random_field,
    run,
    run_config,
    set_deterministic,
    single_mode,
    taylor_green,
    verify_interpolation,
    vertical_velocity,
)

__all__ = [
    "Grid",
    "InvalidArgument",
    "Operator",
    "SolverError",
    "beltrami",
    "divergence",
    "existence_window",
    "forward",
    "hydrostatic_project",
    "inverse",
    "leray_project",
    "nonlinearity",
    "norm_sq",
    "random_field",
    "run",
    "run_config",
    "set_deterministic",
    "single_mode",
    "taylor_green",
    "verify_interpolation",
    "vertical_velocity",
]
