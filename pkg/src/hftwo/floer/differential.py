"""The classified differential: empty rectangles, annuli and octagons.

Candidate shapes are collected once per diagram by walking closed
boundaries with only left turns.  A walk starts at a point used as a lower
left corner heading east, alternates alpha and beta arcs, and closes after
four or eight corners.  Along the way the domain on the left of every arc
must be in the shape and the one on the right out of it, which prunes most
walks early.  A closed four-corner walk that bounds nothing may still be
the outer boundary of an annulus whose inner boundary is a whole curve.

A shape applies to a generator ``x`` when its ``x``-corners belong to
``x`` and its Maslov index relative to ``x`` is one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..diagram import NE, NW, SE, SW, HeegaardDiagram
from .domains import DomainVector, twist
from .generators import Generator

E, N, W, S = 0, 1, 2, 3
# quadrant opposite a convex corner, by the heading leaving it
_OPPOSITE = {N: SE, W: NE, S: NW, E: SW}


@dataclass(frozen=True)
class Shape:
    kind: str  # "rectangle", "annulus" or "octagon"
    support: tuple[int, ...]  # domains with multiplicity one
    xc: tuple[int, ...]  # corners leaving x, sorted
    yc: tuple[int, ...]  # corners entering y, sorted
    n_w: int
    base4: int  # 4 * (e + local multiplicities at the corners)
    weights: tuple[tuple[int, int], ...]  # (mask, weight4) for other points

    def mu4(self, xmask: int) -> int:
        """Four times the Maslov index for a generator with point mask
        ``xmask``; coordinates kept in both ends count twice."""
        total = self.base4
        for mask, w in self.weights:
            total += 2 * w * bin(xmask & mask).count("1")
        return total

    def vector(self, nd: int) -> DomainVector:
        v = [0] * nd
        for d in self.support:
            v[d] = 1
        return tuple(v)


@dataclass
class ShapeCatalog:
    hd: HeegaardDiagram
    shapes: list[Shape] = field(default_factory=list)
    by_xc: dict[tuple[int, ...], list[int]] = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        out = {"rectangle": 0, "annulus": 0, "octagon": 0}
        for s in self.shapes:
            out[s.kind] += 1
        return out


class _Walker:
    def __init__(self, hd: HeegaardDiagram):
        self.hd = hd
        self.nd = hd.num_domains
        self.bp = set(hd.basepoint_domains)
        q = hd.quad
        # for a step leaving p in each direction: next point, arc key, left, right
        self.step = []
        for p in range(hd.num_points):
            self.step.append(
                (
                    (hd.east[p], ("a", p), q[p][NE], q[p][SE]),
                    (hd.north[p], ("b", p), q[p][NW], q[p][NE]),
                    (hd.west[p], ("a", hd.west[p]), q[p][SW], q[p][NW]),
                    (hd.south[p], ("b", hd.south[p]), q[p][SE], q[p][SW]),
                )
            )
        # segments for propagating a boundary chain: (arc key, left, right)
        self.adj: list[list[tuple[int, tuple[str, int], int]]] = [[] for _ in range(self.nd)]
        for p in range(hd.num_points):
            for key, left, right in ((("a", p), q[p][NE], q[p][SE]), (("b", p), q[p][NW], q[p][NE])):
                # crossing from left to right drops the multiplicity by the coefficient
                self.adj[left].append((right, key, -1))
                self.adj[right].append((left, key, 1))
        self.found: dict[tuple[int, ...], Shape] = {}
        self.open_walks: list[dict] = []
        self.bp_marked = 0
        # alpha and beta curves used by x corners (index 0) and y corners (1)
        self.used_a: list[set[int]] = [set(), set()]
        self.used_b: list[set[int]] = [set(), set()]
        self._build_checks()

    def _build_checks(self) -> None:
        """Linear functionals vanishing exactly on boundaries.

        Potentials are propagated along a spanning tree of the domain
        adjacency graph; each non-tree crossing gives one functional.
        """
        keys = sorted({key for row in self.adj for _, key, _ in row})
        self.key_index = {k: i for i, k in enumerate(keys)}
        nk = len(keys)
        pot: list[np.ndarray | None] = [None] * self.nd
        pot[0] = np.zeros(nk, dtype=np.int64)
        queue = deque([0])
        tree: set[tuple[str, int]] = set()
        while queue:
            d = queue.popleft()
            for other, key, sgn in self.adj[d]:
                if pot[other] is None:
                    v = pot[d].copy()
                    v[self.key_index[key]] += sgn
                    pot[other] = v
                    tree.add(key)
                    queue.append(other)
        rows = []
        for d in range(self.nd):
            for other, key, sgn in self.adj[d]:
                if key in tree or sgn != 1:
                    continue
                v = pot[d] - pot[other]
                v[self.key_index[key]] += 1
                rows.append(v)
        self.checks = np.array(rows, dtype=np.int64).T if rows else np.zeros((nk, 0), dtype=np.int64)
        # multiplicities of a boundary chain are pot @ chain up to a constant
        self.pot = np.array(pot, dtype=np.int64)

    # -- walking -----------------------------------------------------------

    def run(self) -> None:
        for p0 in range(self.hd.num_points):
            # the start is a lower left corner: its south-west quadrant is outside
            self._arc(p0, p0, E, [p0], {self.hd.quad[p0][SW]: 0}, {}, set())

    def _arc(self, p0, cur, heading, corners, state, chain, used) -> None:
        """Extend the current arc from ``cur`` along ``heading`` one step at
        a time, branching on where to turn."""
        hd = self.hd
        added: list = []
        p = cur
        length = len(hd.alpha_points[hd.point_alpha[p]]) if heading in (E, W) else len(
            hd.beta_points[hd.point_beta[p]]
        )
        for _ in range(length - 1):
            nxt, key, left, right = self.step[p][heading]
            if key in used or not self._mark(state, left, 1, added) or not self._mark(state, right, 0, added):
                break
            used.add(key)
            chain[key] = chain.get(key, 0) + (1 if heading in (E, N) else -1)
            added.append(("arc", key, heading))
            p = nxt
            self._corner(p0, p, heading, corners, state, chain, used)
            if p in corners:
                break
        self._undo(added, state, chain, used)

    def _corner(self, p0, p, heading, corners, state, chain, used) -> None:
        hd = self.hd
        k = len(corners)
        turning_to_x = heading in (N, S)  # arriving after a beta arc
        if turning_to_x and p == p0:
            if heading == S and k in (4, 8):
                self._close(corners, state, chain)
            return
        if p in corners:
            return
        if k >= 8:
            return
        # corners of the same kind use distinct curves
        par = k % 2
        a, b = hd.point_alpha[p], hd.point_beta[p]
        # the last corner sits on the start's beta curve, the one before on
        # an alpha curve meeting it
        b0 = hd.point_beta[p0]
        if k == 7 and b != b0:
            return
        if k == 6 and (a, b0) not in hd.pair_points:
            return
        if a in self.used_a[par] or b in self.used_b[par]:
            return
        new_heading = (heading + 1) % 4
        # the quadrant opposite a convex corner is outside
        opp = hd.quad[p][_OPPOSITE[new_heading]]
        added: list = []
        if self._mark(state, opp, 0, added):
            corners.append(p)
            self.used_a[par].add(a)
            self.used_b[par].add(b)
            self._arc(p0, p, new_heading, corners, state, chain, used)
            self.used_a[par].discard(a)
            self.used_b[par].discard(b)
            corners.pop()
        self._undo(added, state, {}, set())

    def _mark(self, state: dict, d: int, val: int, added: list) -> bool:
        old = state.get(d)
        if old is not None:
            return old == val
        if val == 1 and d in self.bp:
            if self.bp_marked:
                return False
            self.bp_marked = 1
        state[d] = val
        added.append(("dom", d))
        return True

    def _undo(self, added, state, chain, used) -> None:
        for item in reversed(added):
            if item[0] == "dom":
                if state.pop(item[1]) == 1 and item[1] in self.bp:
                    self.bp_marked = 0
            else:
                _, key, heading = item
                used.discard(key)
                chain[key] -= 1 if heading in (E, N) else -1
                if chain[key] == 0:
                    del chain[key]

    # -- closing -----------------------------------------------------------

    def _close(self, corners, state, chain) -> None:
        D = self._propagate(chain)
        if D is not None:
            self._accept(D, "rectangle" if len(corners) == 4 else "octagon")
        elif len(corners) == 4:
            self.open_walks.append(dict(chain))

    def _propagate(self, chain: dict) -> list[int] | None:
        """The chain with boundary ``chain`` and minimum zero, if any."""
        idx = [self.key_index[k] for k in chain]
        coef = np.fromiter(chain.values(), dtype=np.int64, count=len(idx))
        if (coef @ self.checks[idx]).any():
            return None
        val = self.pot[:, idx] @ coef
        return (val - val.min()).tolist()

    def _accept(self, D: list[int], kind: str) -> None:
        if max(D) != 1:
            return
        support = tuple(d for d, v in enumerate(D) if v)
        if support in self.found:
            return
        hd = self.hd
        nw = sum(D[b] for b in self.bp)
        if nw > 1:
            return
        t = twist(hd, D)
        if any(v not in (-1, 0, 1) for v in t):
            return
        xc = tuple(p for p, v in enumerate(t) if v == 1)
        yc = tuple(p for p, v in enumerate(t) if v == -1)
        for group in (xc, yc):
            if len({hd.point_alpha[p] for p in group}) != len(group):
                return
            if len({hd.point_beta[p] for p in group}) != len(group):
                return
        e4 = sum(D[d] * hd.euler4[d] for d in support)
        loc = [sum(D[d] for d in hd.quad[p]) for p in range(hd.num_points)]
        base4 = e4 + sum(loc[p] for p in xc) + sum(loc[p] for p in yc)
        corner_set = set(xc) | set(yc)
        masks: dict[int, int] = {}
        for p, w in enumerate(loc):
            if w and p not in corner_set:
                masks[w] = masks.get(w, 0) | (1 << p)
        if base4 > 4:
            return
        weights = tuple((m, w) for w, m in sorted(masks.items()))
        self.found[support] = Shape(kind, support, xc, yc, nw, base4, weights)

    def close_annuli(self) -> None:
        hd = self.hd
        circles = []
        for a, pts in enumerate(hd.alpha_points):
            circles.append({("a", p): 1 for p in pts})
        for b, pts in enumerate(hd.beta_points):
            circles.append({("b", p): 1 for p in pts})
        for chain in self.open_walks:
            for circle in circles:
                if any(k in chain for k in circle):
                    continue
                for sgn in (1, -1):
                    full = dict(chain)
                    for k, v in circle.items():
                        full[k] = sgn * v
                    D = self._propagate(full)
                    if D is not None:
                        self._accept(D, "annulus")


def build_catalog(hd: HeegaardDiagram) -> ShapeCatalog:
    w = _Walker(hd)
    w.run()
    w.close_annuli()
    cat = ShapeCatalog(hd)
    for support in sorted(w.found):
        s = w.found[support]
        cat.by_xc.setdefault(s.xc, []).append(len(cat.shapes))
        cat.shapes.append(s)
    return cat


def point_mask(x: Sequence[int]) -> int:
    m = 0
    for p in x:
        m |= 1 << p
    return m


def _subsets(items: Sequence[int], size: int):
    from itertools import combinations

    return combinations(items, size)


def enumerate_differential_domains(
    cat: ShapeCatalog, x: Generator
) -> list[tuple[Generator, Shape]]:
    """All ``(y, shape)`` with the shape a Maslov index one, ``n_w <= 1``
    class from ``x`` to ``y``, sorted by ``y`` then support."""
    hd = cat.hd
    xmask = point_mask(x)
    xs = sorted(x)
    out = []
    sizes = sorted({len(k) for k in cat.by_xc})
    for size in sizes:
        for key in _subsets(xs, size):
            ids = cat.by_xc.get(key)
            if not ids:
                continue
            for i in ids:
                s = cat.shapes[i]
                if s.mu4(xmask) != 4:
                    continue
                y = list(x)
                for p in s.yc:
                    y[hd.point_alpha[p]] = p
                out.append((tuple(y), s))
    out.sort(key=lambda ys: (ys[0], ys[1].support))
    return out
