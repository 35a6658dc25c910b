"""JSON export and import of adapted diagrams.

Schema (``"format": "hftwo-diagram"``, ``"version": 1``)::

    grid        {"n", "X", "O", "sides"}          1-based columns, or null
    sigma       "12 12 13 13"                     or null
    endcircle   "upper" | "lower"                 or null
    surface
      grid_size N                                 fine grid size 2n
      vertices  [[px, py, sheet], ...]            downstairs fine point
      edges     [{"kind", "tail", "head", "lift", "left", "right", "proj"}]
      faces     [{"boundary": [[edge, +-1], ...], "corners", "cell", "octagon"}]
      lifts     [{"kind", "line", "old", "edges", "vertices", "kept"}]
    diagram
      alphas, betas      point lists per curve, in curve order
      alpha_old, beta_old
      basepoints         elementary domains containing a basepoint
      domains            [{"faces", "corners", "chi", "kind"}]
      points             [{"alpha", "beta", "sign", "proj", "vertex", "quadrants"}]

Edges run along the lifted grid orientation (``"a"`` rightward, ``"b"``
upward) with ``left``/``right`` faces; a face boundary lists its edges
counterclockwise with the traversal direction.  Quadrants are given in the
order NE, NW, SW, SE relative to (alpha forward, beta forward).  Import
reads the ``surface`` section and rebuilds the diagram from it; the
``diagram`` section is derived data and is checked for agreement.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .cover.adapted import AdaptedDiagram, merge_domains
from .cover.surface import Edge, Face, Lift, SurfaceComplex
from .diagram import DiagramError, HeegaardDiagram

FORMAT = "hftwo-diagram"
VERSION = 1


def surface_to_dict(surf: SurfaceComplex) -> dict[str, Any]:
    return {
        "grid_size": surf.grid_size,
        "vertices": [list(v) for v in surf.vertices],
        "edges": [
            {
                "kind": e.kind,
                "tail": e.tail,
                "head": e.head,
                "lift": e.lift,
                "left": e.left,
                "right": e.right,
                "proj": list(e.proj),
            }
            for e in surf.edges
        ],
        "faces": [
            {
                "boundary": [list(b) for b in f.boundary],
                "corners": list(f.corners),
                "cell": list(f.cell),
                "octagon": f.octagon,
            }
            for f in surf.faces
        ],
        "lifts": [
            {
                "kind": lf.kind,
                "line": lf.line,
                "old": lf.old,
                "edges": list(lf.edges),
                "vertices": list(lf.vertices),
                "kept": lf.kept,
            }
            for lf in surf.lifts
        ],
    }


def surface_from_dict(obj: dict[str, Any]) -> SurfaceComplex:
    return SurfaceComplex(
        vertices=[tuple(v) for v in obj["vertices"]],
        edges=[
            Edge(e["kind"], e["tail"], e["head"], e["lift"], e["left"], e["right"], tuple(e["proj"]))
            for e in obj["edges"]
        ],
        faces=[
            Face([tuple(b) for b in f["boundary"]], list(f["corners"]), tuple(f["cell"]), f["octagon"])
            for f in obj["faces"]
        ],
        lifts=[
            Lift(lf["kind"], lf["line"], lf["old"], list(lf["edges"]), list(lf["vertices"]), lf["kept"])
            for lf in obj["lifts"]
        ],
        grid_size=obj["grid_size"],
    )


def diagram_to_dict(hd: HeegaardDiagram) -> dict[str, Any]:
    return {
        "alphas": hd.alpha_points,
        "betas": hd.beta_points,
        "alpha_old": hd.alpha_old,
        "beta_old": hd.beta_old,
        "basepoints": hd.basepoint_domains,
        "domains": [
            {
                "faces": hd.domain_faces[d],
                "corners": hd.domain_corners[d],
                "chi": hd.domain_chi[d],
                "kind": hd.domain_kind(d),
            }
            for d in range(hd.num_domains)
        ],
        "points": [
            {
                "alpha": hd.point_alpha[p],
                "beta": hd.point_beta[p],
                "sign": hd.sign[p],
                "proj": list(hd.point_proj[p]),
                "vertex": hd.point_vertex[p],
                "quadrants": list(hd.quad[p]),
            }
            for p in range(hd.num_points)
        ],
    }


def export_adapted(ad: AdaptedDiagram) -> dict[str, Any]:
    g = ad.grid.base
    return {
        "format": FORMAT,
        "version": VERSION,
        "grid": {
            "n": g.n,
            "X": [c + 1 for c in g.xcol],
            "O": [c + 1 for c in g.ocol],
            "sides": ad.grid.sides(),
        },
        "sigma": ad.monodromy.format(),
        "endcircle": ad.endcircle,
        "summary": ad.summary,
        "surface": surface_to_dict(ad.surface),
        "diagram": diagram_to_dict(ad.diagram),
    }


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def import_diagram(obj: dict[str, Any]) -> tuple[SurfaceComplex, HeegaardDiagram]:
    """Rebuild surface and diagram from an exported document."""
    if obj.get("format") != FORMAT:
        raise DiagramError(f"not an {FORMAT} document")
    if obj.get("version") != VERSION:
        raise DiagramError(f"unsupported version {obj.get('version')!r}")
    surf = surface_from_dict(obj["surface"])
    hd = merge_domains(surf)
    stored = obj.get("diagram")
    if stored is not None and json.loads(json.dumps(diagram_to_dict(hd))) != stored:
        raise DiagramError("diagram section disagrees with the surface")
    return surf, hd


def load_diagram(path: str | Path) -> tuple[SurfaceComplex, HeegaardDiagram]:
    return import_diagram(json.loads(Path(path).read_text()))
