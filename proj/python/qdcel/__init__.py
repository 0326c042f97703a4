"""Correlated-emission lasing model for a coherently driven quantum dot in a
bimodal photonic-crystal cavity.

Thin Python layer over the C++ core; see the module docstrings of
``qdcel._core`` for the individual operations.
"""

from ._core import (
    ConfigError,
    NumericalError,
    PhononBathParams,
    SystemParams,
    Variant,
    excess_emission,
    fokker_planck,
    known_figures,
    known_tasks,
    mean_displacement,
    run_figure,
    run_sweep,
    steady_observables,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "PhononBathParams",
    "SystemParams",
    "Variant",
    "excess_emission",
    "fokker_planck",
    "known_figures",
    "known_tasks",
    "mean_displacement",
    "run_figure",
    "run_sweep",
    "steady_observables",
]
