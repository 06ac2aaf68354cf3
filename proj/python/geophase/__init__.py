"""Geometric phase of one spin coupled to a second spin and an ohmic bath."""

from ._core import (
    NumericalError,
    Model,
    Regime,
    bloch,
    concurrence,
    decoherence_factor,
    geometric_phase,
    gp_discretized,
    gp_vs_time,
    lambda0_from_concurrence,
    model,
    parse_real,
    pi,
    preset_names,
    reduced_density,
    run_preset,
    sweep,
    trajectory,
)

__all__ = [
    "NumericalError",
    "Model",
    "Regime",
    "bloch",
    "concurrence",
    "decoherence_factor",
    "geometric_phase",
    "gp_discretized",
    "gp_vs_time",
    "lambda0_from_concurrence",
    "model",
    "parse_real",
    "pi",
    "preset_names",
    "reduced_density",
    "run_preset",
    "sweep",
    "trajectory",
]
