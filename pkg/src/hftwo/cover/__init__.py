"""Simple 3-fold branched cover of the torus over an extended grid."""

from __future__ import annotations

from .cocycle import CocycleError, TransitionCocycle, build_cocycle
from .surface import ConstructionError, SurfaceComplex, build_surface, lift_curves, select_curves

__all__ = [
    "CocycleError",
    "ConstructionError",
    "SurfaceComplex",
    "TransitionCocycle",
    "build_cocycle",
    "build_surface",
    "lift_curves",
    "select_curves",
]
