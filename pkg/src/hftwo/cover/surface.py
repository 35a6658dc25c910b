"""The covering surface as an oriented cell complex with lifted curves.

Every vertex of the complex lies on exactly one horizontal (``"a"``) and
one vertical (``"b"``) curve lift.  Edges are oriented along the lifted
grid orientations (A rightward, B upward); ``left``/``right`` are the faces
on either side with respect to the surface orientation lifted from the
torus.  The structure is generic so that diagrams can be read back from
JSON without the grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..grid import ExtendedGrid
from .cocycle import TransitionCocycle


class ConstructionError(RuntimeError):
    """A structural property the construction must satisfy failed."""

    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check
        self.detail = detail


@dataclass
class Edge:
    kind: str  # "a" horizontal, "b" vertical
    tail: int
    head: int
    lift: int = -1
    left: int = -1
    right: int = -1
    proj: tuple[int, int] = (0, 0)  # fine (px, py) of the downstairs tail


@dataclass
class Face:
    boundary: list[tuple[int, int]]  # (edge, +1 forward / -1 backward), ccw
    corners: list[int]  # vertex at the start of each boundary step
    cell: tuple[int, int]  # downstairs fine cell (fine_row, fine_col)
    octagon: bool


@dataclass
class Lift:
    kind: str
    line: int  # downstairs fine line index
    old: bool
    edges: list[int]
    vertices: list[int]  # vertices[i] is the tail of edges[i]
    kept: bool = True


@dataclass
class SurfaceComplex:
    vertices: list[tuple[int, int, int]]  # (px, py, sheet label) projection data
    edges: list[Edge]
    faces: list[Face]
    lifts: list[Lift] = field(default_factory=list)
    grid_size: int = 0

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def vertex_edges(self) -> tuple[list[int], list[int], list[int], list[int]]:
        """Per vertex: outgoing a, incoming a, outgoing b, incoming b."""
        nv = len(self.vertices)
        a_out, a_in, b_out, b_in = [-1] * nv, [-1] * nv, [-1] * nv, [-1] * nv
        for i, e in enumerate(self.edges):
            if e.kind == "a":
                a_out[e.tail], a_in[e.head] = i, i
            else:
                b_out[e.tail], b_in[e.head] = i, i
        return a_out, a_in, b_out, b_in

    def lift_of_vertex(self) -> tuple[list[int], list[int]]:
        nv = len(self.vertices)
        la, lb = [-1] * nv, [-1] * nv
        for k, lift in enumerate(self.lifts):
            target = la if lift.kind == "a" else lb
            for v in lift.vertices:
                target[v] = k
        return la, lb


def build_surface(eg: ExtendedGrid, cocycle: TransitionCocycle) -> SurfaceComplex:
    """Lift the fine cell structure through the cover given by ``cocycle``."""
    N = eg.size
    if cocycle.size != N:
        raise ValueError("cocycle size does not match the extended grid")

    def vid(px: int, py: int, s: int) -> int:
        return ((py % N) * N + (px % N)) * 3 + s

    vertices = [(px, py, s) for py in range(N) for px in range(N) for s in range(3)]
    edges: list[Edge] = []
    h_id = {}
    v_id = {}
    for py in range(N):
        for px in range(N):
            for s in range(3):
                t = cocycle.h[py][px][s]
                h_id[(px, py, s)] = len(edges)
                edges.append(Edge("a", vid(px, py, s), vid(px + 1, py, t), proj=(px, py)))
                t = cocycle.v[py][px][s]
                v_id[(px, py, s)] = len(edges)
                edges.append(Edge("b", vid(px, py, s), vid(px, py + 1, t), proj=(px, py)))

    marked = eg.marked_faces()
    faces: list[Face] = []
    for fr in range(N):
        for fc in range(N):
            used: set[int] = set()
            for s0 in range(3):
                if s0 in used:
                    continue
                boundary: list[tuple[int, int]] = []
                corners: list[int] = []
                s = s0
                while True:
                    used.add(s)
                    # bottom, right, top (backwards), left (backwards)
                    e = h_id[(fc, fr, s)]
                    corners.append(edges[e].tail)
                    boundary.append((e, 1))
                    s = cocycle.h[fr][fc][s]
                    e = v_id[((fc + 1) % N, fr, s)]
                    corners.append(edges[e].tail)
                    boundary.append((e, 1))
                    s = cocycle.v[fr][(fc + 1) % N][s]
                    s = _preimage(cocycle.h[(fr + 1) % N][fc], s)
                    e = h_id[(fc, (fr + 1) % N, s)]
                    corners.append(edges[e].head)
                    boundary.append((e, -1))
                    s = _preimage(cocycle.v[fr][fc], s)
                    e = v_id[(fc, fr, s)]
                    corners.append(edges[e].head)
                    boundary.append((e, -1))
                    if s == s0:
                        break
                face = len(faces)
                octagon = len(boundary) == 8
                if octagon and (fr, fc) not in marked:
                    raise ConstructionError("face lift", f"octagon over unmarked cell {(fr, fc)}")
                faces.append(Face(boundary, corners, (fr, fc), octagon))
                for e, d in boundary:
                    if d > 0:
                        edges[e].left = face
                    else:
                        edges[e].right = face

    surf = SurfaceComplex(vertices, edges, faces, grid_size=N)
    expected = -2 * eg.base.n
    if surf.euler_characteristic() != expected:
        raise ConstructionError(
            "Riemann-Hurwitz", f"chi = {surf.euler_characteristic()}, expected {expected}"
        )
    return surf


def _preimage(p: tuple[int, int, int], s: int) -> int:
    return p.index(s)


def lift_curves(surf: SurfaceComplex) -> None:
    """Partition edges into curve lifts and check the lift counts.

    Old lines must lift to three circles and new lines to two, one of which
    double covers its line.
    """
    N = surf.grid_size
    a_out, _, b_out, _ = surf.vertex_edges()
    seen = [False] * len(surf.edges)
    lifts: list[Lift] = []
    for kind, out in (("a", a_out), ("b", b_out)):
        for line in range(N):
            line_lifts = []
            for s in range(3):
                px, py = (0, line) if kind == "a" else (line, 0)
                v = (py * N + px) * 3 + s
                e = out[v]
                if seen[e]:
                    continue
                lift = Lift(kind, line, line % 2 == 0, [], [])
                while not seen[e]:
                    seen[e] = True
                    surf.edges[e].lift = len(lifts)
                    lift.edges.append(e)
                    lift.vertices.append(surf.edges[e].tail)
                    e = out[surf.edges[e].head]
                lifts.append(lift)
                line_lifts.append(lift)
            lengths = sorted(len(lf.edges) // N for lf in line_lifts)
            if line % 2 == 0 and lengths != [1, 1, 1]:
                raise ConstructionError(
                    "old curve lift",
                    f"{kind}-line {line} lifts with degrees {lengths}; the old curve "
                    "has nontrivial holonomy (monodromy inconsistent with the grid)",
                )
            if line % 2 == 1 and lengths != [1, 2]:
                raise ConstructionError(
                    "new curve lift", f"{kind}-line {line} lifts with degrees {lengths}"
                )
    surf.lifts = lifts


def strip_components(surf: SurfaceComplex, kind: str, strip: int) -> list[list[int]]:
    """Components of the preimage of the annulus between old lines
    ``2*strip`` and ``2*strip + 2`` (rows for ``"a"``, columns for ``"b"``)."""
    inside = []
    for f, face in enumerate(surf.faces):
        fr, fc = face.cell
        k = fr if kind == "a" else fc
        if k // 2 == strip:
            inside.append(f)
    parent = {f: f for f in inside}

    def find(f: int) -> int:
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    for f in inside:
        for e, _ in surf.faces[f].boundary:
            edge = surf.edges[e]
            # crossing an edge stays inside unless it lies on an old line of this kind
            if edge.kind == kind:
                line = edge.proj[1] if kind == "a" else edge.proj[0]
                if line % 2 == 0:
                    continue
            a, b = find(edge.left), find(edge.right)
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = {}
    for f in inside:
        comps.setdefault(find(f), []).append(f)
    return sorted(comps.values(), key=min)


def select_curves(surf: SurfaceComplex, endcircle: str = "upper") -> None:
    """Mark the lifts kept as alpha/beta curves.

    New lines keep their double-covering lift.  Each old line drops the lift
    bounding the annular component of the annulus it is the right endcircle
    of: the annulus below/left of it for ``endcircle="upper"`` (the larger
    cyclic index), above/right of it for ``"lower"``.
    """
    if endcircle not in ("upper", "lower"):
        raise ValueError("endcircle must be 'upper' or 'lower'")
    N = surf.grid_size
    n = N // 2
    for lift in surf.lifts:
        lift.kept = True
        if not lift.old and len(lift.edges) == N:
            lift.kept = False
    for kind in ("a", "b"):
        for strip in range(n):
            comps = strip_components(surf, kind, strip)
            octs = [sum(surf.faces[f].octagon for f in comp) for comp in comps]
            if sorted(octs) != [0, 2]:
                raise ConstructionError(
                    "annulus preimage",
                    f"{kind}-strip {strip}: components carry {octs} octagons, expected [0, 2]",
                )
            annular = comps[octs.index(0)]
            if len(annular) != 4 * n:
                raise ConstructionError("annulus preimage", "annular component has wrong size")
            target = (2 * strip + 2) % N if endcircle == "upper" else 2 * strip
            found = set()
            for f in annular:
                for e, _ in surf.faces[f].boundary:
                    edge = surf.edges[e]
                    line = edge.proj[1] if kind == "a" else edge.proj[0]
                    if edge.kind == kind and line == target:
                        found.add(edge.lift)
            if len(found) != 1:
                raise ConstructionError("annulus preimage", f"boundary lifts {sorted(found)}")
            surf.lifts[found.pop()].kept = False
