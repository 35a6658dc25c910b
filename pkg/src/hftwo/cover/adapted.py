"""End-to-end construction of the adapted diagram from grid and monodromy."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..diagram import HeegaardDiagram, diagram_from_complex
from ..grid import ExtendedGrid, GridSpec, extend_grid
from ..monodromy import (
    Monodromy,
    marker_transpositions,
    validate_transitive,
    validate_wirtinger,
)
from .cocycle import CocycleError, TransitionCocycle, build_cocycle
from .surface import ConstructionError, SurfaceComplex, build_surface, lift_curves, select_curves


@dataclass
class AdaptedDiagram:
    grid: ExtendedGrid
    monodromy: Monodromy
    cocycle: TransitionCocycle
    surface: SurfaceComplex
    diagram: HeegaardDiagram
    endcircle: str = "upper"

    @property
    def n(self) -> int:
        return self.grid.base.n

    @property
    def genus(self) -> int:
        return (2 - self.surface.euler_characteristic()) // 2

    @cached_property
    def summary(self) -> dict:
        hd = self.diagram
        kinds = [hd.domain_kind(d) for d in range(hd.num_domains)]
        return {
            "n": self.n,
            "genus": self.genus,
            "euler_characteristic": self.surface.euler_characteristic(),
            "alphas": hd.num_alpha,
            "betas": hd.num_beta,
            "basepoints": len(hd.basepoint_domains),
            "surface_faces": len(self.surface.faces),
            "surface_octagons": sum(f.octagon for f in self.surface.faces),
            "elementary_domains": hd.num_domains,
            "rectangles": kinds.count("rectangle"),
            "octagons": kinds.count("octagon"),
            "intersection_points": hd.num_points,
        }


def merge_domains(surf: SurfaceComplex) -> HeegaardDiagram:
    """Merge faces into elementary domains and reject anything that is not
    a rectangle or a single-basepoint octagon."""
    hd = diagram_from_complex(surf)
    for d in range(hd.num_domains):
        kind = hd.domain_kind(d)
        n_oct = sum(surf.faces[f].octagon for f in hd.domain_faces[d])
        if kind == "rectangle" and n_oct == 0:
            continue
        if kind == "octagon" and n_oct == 1:
            continue
        raise ConstructionError(
            "elementary domains",
            f"domain {d} is {kind} with {n_oct} octagon faces",
        )
    return hd


def build_adapted(
    g: GridSpec,
    m: Monodromy,
    sides: str | None = None,
    endcircle: str = "upper",
) -> AdaptedDiagram:
    """Run every construction stage, raising at the first failed check.

    Monodromy problems raise :class:`ConstructionError` with check
    ``"transitivity"`` or ``"wirtinger"``.
    """
    orbits = validate_transitive(m)
    if orbits is not None:
        parts = " ".join("{" + ",".join(str(i + 1) for i in sorted(o)) + "}" for o in orbits)
        raise ConstructionError("transitivity", f"sheet orbits {parts}")
    failure = validate_wirtinger(g, m)
    if failure is not None:
        raise ConstructionError("wirtinger", str(failure))
    eg = extend_grid(g, sides)
    try:
        cocycle = build_cocycle(eg, marker_transpositions(g, m))
    except CocycleError as exc:
        raise ConstructionError("cocycle", str(exc)) from None
    surf = build_surface(eg, cocycle)
    lift_curves(surf)
    select_curves(surf, endcircle)
    hd = merge_domains(surf)
    return AdaptedDiagram(eg, m, cocycle, surf, hd, endcircle)
