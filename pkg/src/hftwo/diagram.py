"""Multi-pointed Heegaard diagram at the level of elementary domains.

Built from a :class:`~hftwo.cover.surface.SurfaceComplex` whose lifts carry
``kept`` flags.  Intersection points are the vertices where a kept
horizontal lift (an alpha curve) meets a kept vertical lift (a beta
curve).  Around each point the four quadrants are named in the frame
(alpha forward, beta forward): ``NE`` lies between outgoing alpha and
outgoing beta, then ``NW``, ``SW``, ``SE`` counterclockwise.

Multiplicities of local corners are handled in quarter units so every
measure stays an integer: ``4 * e`` and the quadrant sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .cover.surface import SurfaceComplex

NE, NW, SW, SE = 0, 1, 2, 3


class DiagramError(ValueError):
    pass


@dataclass
class HeegaardDiagram:
    point_alpha: list[int]
    point_beta: list[int]
    east: list[int]
    west: list[int]
    north: list[int]
    south: list[int]
    quad: list[tuple[int, int, int, int]]
    sign: list[int]
    alpha_points: list[list[int]]
    beta_points: list[list[int]]
    alpha_old: list[bool]
    beta_old: list[bool]
    domain_corners: list[int]
    domain_chi: list[int]
    domain_faces: list[list[int]]
    domain_basepoint: list[bool]
    alpha_line: list[int] = field(default_factory=list)
    beta_line: list[int] = field(default_factory=list)
    point_proj: list[tuple[int, int]] = field(default_factory=list)
    point_vertex: list[int] = field(default_factory=list)
    grid_size: int = 0

    @property
    def num_points(self) -> int:
        return len(self.point_alpha)

    @property
    def num_domains(self) -> int:
        return len(self.domain_corners)

    @property
    def num_alpha(self) -> int:
        return len(self.alpha_points)

    @property
    def num_beta(self) -> int:
        return len(self.beta_points)

    @cached_property
    def basepoint_domains(self) -> list[int]:
        return [d for d, b in enumerate(self.domain_basepoint) if b]

    @cached_property
    def euler4(self) -> list[int]:
        """Four times the Euler measure of each domain."""
        return [4 * chi - c for chi, c in zip(self.domain_chi, self.domain_corners)]

    def domain_kind(self, d: int) -> str:
        if self.domain_chi[d] == 1 and self.domain_corners[d] == 4:
            return "rectangle"
        if self.domain_chi[d] == 1 and self.domain_corners[d] == 8:
            return "octagon"
        return f"other(chi={self.domain_chi[d]}, corners={self.domain_corners[d]})"

    @cached_property
    def pair_points(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for p, (a, b) in enumerate(zip(self.point_alpha, self.point_beta)):
            out.setdefault((a, b), []).append(p)
        return out

    def intersection_matrix(self) -> list[list[int]]:
        m = [[0] * self.num_beta for _ in range(self.num_alpha)]
        for a, b in zip(self.point_alpha, self.point_beta):
            m[a][b] += 1
        return m

    def point_quadrants_domains(self) -> list[list[tuple[int, int]]]:
        """For every domain, its ``(point, quadrant)`` corners."""
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.num_domains)]
        for p, qs in enumerate(self.quad):
            for q, d in enumerate(qs):
                out[d].append((p, q))
        return out


def diagram_from_complex(surf: SurfaceComplex, basepoint_faces: set[int] | None = None) -> HeegaardDiagram:
    """Merge faces across dropped lifts and record the intersection data.

    ``basepoint_faces`` defaults to the octagonal faces of the complex.
    """
    if basepoint_faces is None:
        basepoint_faces = {f for f, face in enumerate(surf.faces) if face.octagon}
    lifts = surf.lifts
    la, lb = surf.lift_of_vertex()
    if min(la, default=0) < 0 or min(lb, default=0) < 0:
        raise DiagramError("every vertex must lie on one a-lift and one b-lift")
    a_out, a_in, b_out, b_in = surf.vertex_edges()

    alpha_ids = [k for k, lf in enumerate(lifts) if lf.kind == "a" and lf.kept]
    beta_ids = [k for k, lf in enumerate(lifts) if lf.kind == "b" and lf.kept]
    alpha_index = {k: i for i, k in enumerate(alpha_ids)}
    beta_index = {k: i for i, k in enumerate(beta_ids)}

    # elementary domains
    parent = list(range(len(surf.faces)))

    def find(f: int) -> int:
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    for e in surf.edges:
        if not lifts[e.lift].kept:
            a, b = find(e.left), find(e.right)
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = sorted({find(f) for f in range(len(surf.faces))})
    dom_of_root = {r: i for i, r in enumerate(roots)}
    face_dom = [dom_of_root[find(f)] for f in range(len(surf.faces))]
    nd = len(roots)
    domain_faces: list[list[int]] = [[] for _ in range(nd)]
    for f, d in enumerate(face_dom):
        domain_faces[d].append(f)
    chi = [len(fs) for fs in domain_faces]
    for e in surf.edges:
        if not lifts[e.lift].kept:
            chi[face_dom[e.left]] -= 1
    for v in range(len(surf.vertices)):
        if not lifts[la[v]].kept and not lifts[lb[v]].kept:
            chi[face_dom[surf.edges[a_out[v]].left]] += 1

    # intersection points
    point_of_vertex: dict[int, int] = {}
    point_alpha, point_beta, quad, sign, proj, pvert = [], [], [], [], [], []
    for v in range(len(surf.vertices)):
        if lifts[la[v]].kept and lifts[lb[v]].kept:
            point_of_vertex[v] = len(point_alpha)
            point_alpha.append(alpha_index[la[v]])
            point_beta.append(beta_index[lb[v]])
            eo, ei = surf.edges[a_out[v]], surf.edges[a_in[v]]
            bo = surf.edges[b_out[v]]
            if bo.right == eo.left:
                sign.append(1)
            elif bo.left == eo.left:
                sign.append(-1)
            else:
                raise DiagramError(f"vertex {v}: inconsistent local picture")
            quad.append(
                (face_dom[eo.left], face_dom[ei.left], face_dom[ei.right], face_dom[eo.right])
            )
            px, py, _ = surf.vertices[v]
            proj.append((px, py))
            pvert.append(v)
    P = len(point_alpha)
    east, west, north, south = [-1] * P, [-1] * P, [-1] * P, [-1] * P
    alpha_points, beta_points = [], []
    for ids, fwd, bwd, out in ((alpha_ids, east, west, alpha_points), (beta_ids, north, south, beta_points)):
        for k in ids:
            pts = [point_of_vertex[v] for v in lifts[k].vertices if v in point_of_vertex]
            if not pts:
                raise DiagramError(f"curve lift {k} meets no curve of the other kind")
            for i, p in enumerate(pts):
                fwd[p] = pts[(i + 1) % len(pts)]
                bwd[pts[(i + 1) % len(pts)]] = p
            out.append(pts)

    corners = [0] * nd
    for qs in quad:
        for d in qs:
            corners[d] += 1
    basepoint = [False] * nd
    for f in basepoint_faces:
        basepoint[face_dom[f]] = True

    return HeegaardDiagram(
        point_alpha=point_alpha,
        point_beta=point_beta,
        east=east,
        west=west,
        north=north,
        south=south,
        quad=quad,
        sign=sign,
        alpha_points=alpha_points,
        beta_points=beta_points,
        alpha_old=[lifts[k].old for k in alpha_ids],
        beta_old=[lifts[k].old for k in beta_ids],
        domain_corners=corners,
        domain_chi=chi,
        domain_faces=domain_faces,
        domain_basepoint=basepoint,
        alpha_line=[lifts[k].line for k in alpha_ids],
        beta_line=[lifts[k].line for k in beta_ids],
        point_proj=proj,
        point_vertex=pvert,
        grid_size=surf.grid_size,
    )


def canonical_form(hd: HeegaardDiagram) -> tuple:
    """Isomorphism invariant of the oriented 4-valent curve map.

    Each start is a point together with an alpha direction; the traversal
    visits neighbours counterclockwise starting from that direction, so the
    code is unchanged when every curve is reversed at once.  Basepoint
    domains are recorded through the corners they occupy.
    """
    nbrs = [
        (hd.east[p], hd.north[p], hd.west[p], hd.south[p]) for p in range(hd.num_points)
    ]
    # quadrant between direction k and k+1 counterclockwise: NE, NW, SW, SE
    bp = hd.domain_basepoint
    best = None
    for start in range(hd.num_points):
        for rot in (0, 2):
            code = _traverse(start, rot, nbrs, hd.quad, bp)
            if best is None or code < best:
                best = code
    return (hd.num_points, hd.num_alpha, hd.num_beta, best)


def _traverse(start, rot, nbrs, quad, bp) -> tuple:
    label = {start: 0}
    entry = {start: rot}
    order = [start]
    out = []
    i = 0
    while i < len(order):
        p = order[i]
        r = entry[p]
        row = []
        for k in range(4):
            d = (r + k) % 4
            q = nbrs[p][d]
            if q not in label:
                label[q] = len(order)
                # keep the neighbour's frame aligned with ours
                entry[q] = r
                order.append(q)
            row.append(label[q])
            row.append(1 if bp[quad[p][d]] else 0)
        out.append(tuple(row))
        i += 1
    return tuple(out)
