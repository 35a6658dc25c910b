"""Sheet-transition cocycle of the 3-fold cover over the fine grid.

Sheets are labelled at every fine vertex.  ``h[py][px]`` carries sheet
labels along the horizontal edge ``(px, py) -> (px+1, py)`` and
``v[py][px]`` along the vertical edge ``(px, py) -> (px, py+1)``.

The cover of column strip ``c`` is cut open along a path joining its two
markers; every fine edge crossed by the path carries ``sigma[c]`` and all
other edges carry the identity.  The vertical part of the path stays
inside one fine column and never crosses fine line 0, matching the
non-wrapping vertical segments of the Wirtinger walk.  Old vertical lines
are then trivially labelled and old horizontal lines have trivial
holonomy exactly when the Wirtinger walk succeeds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..grid import ExtendedGrid
from ..monodromy import (
    IDENTITY,
    MarkerBranching,
    Perm,
    all_perms,
    compose,
    inverse,
    perm_name,
)


class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class TransitionCocycle:
    size: int
    h: tuple[tuple[Perm, ...], ...]
    v: tuple[tuple[Perm, ...], ...]

    @classmethod
    def identity(cls, size: int) -> "TransitionCocycle":
        row = (IDENTITY,) * size
        return cls(size, (row,) * size, (row,) * size)

    def face_holonomy(self, fr: int, fc: int) -> Perm:
        """Counterclockwise product around fine cell ``(fr, fc)`` from its
        lower-left corner: sheet ``s`` there returns as ``hol[s]``."""
        N = self.size
        up, right = (fr + 1) % N, (fc + 1) % N
        p = self.h[fr][fc]
        p = compose(self.v[fr][right], p)
        p = compose(inverse(self.h[up][fc]), p)
        return compose(inverse(self.v[fr][fc]), p)

    def line_holonomy(self, horizontal: bool, line: int) -> Perm:
        p = IDENTITY
        for k in range(self.size):
            p = compose(self.h[line][k] if horizontal else self.v[k][line], p)
        return p

    def gauge(self, g: list[list[Perm]]) -> "TransitionCocycle":
        """Relabel sheets at vertex ``(px, py)`` by ``g[py][px]``."""
        N = self.size
        h = tuple(
            tuple(
                compose(g[py][(px + 1) % N], compose(self.h[py][px], inverse(g[py][px])))
                for px in range(N)
            )
            for py in range(N)
        )
        v = tuple(
            tuple(
                compose(g[(py + 1) % N][px], compose(self.v[py][px], inverse(g[py][px])))
                for px in range(N)
            )
            for py in range(N)
        )
        return TransitionCocycle(N, h, v)

    def random_gauge(self, rng: random.Random) -> "TransitionCocycle":
        perms = all_perms()
        return self.gauge([[rng.choice(perms) for _ in range(self.size)] for _ in range(self.size)])


def build_cocycle(eg: ExtendedGrid, mb: MarkerBranching, cut_from: str = "X") -> TransitionCocycle:
    """Cut-based cocycle; ``cut_from`` picks which marker's fine column
    carries the vertical part of each cut (the results are gauge
    equivalent)."""
    g = eg.base
    N = eg.size
    h = [[IDENTITY] * N for _ in range(N)]
    v = [[IDENTITY] * N for _ in range(N)]
    markers = g.markers()
    by_col: dict[int, dict[str, int]] = {}
    for m, (kind, _, c) in enumerate(markers):
        by_col.setdefault(c, {})[kind] = m
    for c in range(g.n):
        start = by_col[c][cut_from]
        end = by_col[c]["O" if cut_from == "X" else "X"]
        tau = mb.tau[start]
        if mb.tau[end] != tau:
            raise CocycleError(f"column {c + 1}: markers carry different transpositions")
        (a, col_a), (b, col_b) = eg.marker_cell[start], eg.marker_cell[end]
        for py in range(min(a, b) + 1, max(a, b) + 1):
            h[py][col_a] = tau
        v[b][max(col_a, col_b)] = tau
    cocycle = TransitionCocycle(N, tuple(map(tuple, h)), tuple(map(tuple, v)))
    check_face_holonomies(cocycle, eg, mb)
    return cocycle


def check_face_holonomies(cocycle: TransitionCocycle, eg: ExtendedGrid, mb: MarkerBranching) -> None:
    """Every unmarked face has trivial holonomy and every marked face a
    conjugate of its marker's transposition."""
    marked = eg.marked_faces()
    for fr in range(cocycle.size):
        for fc in range(cocycle.size):
            hol = cocycle.face_holonomy(fr, fc)
            m = marked.get((fr, fc))
            if m is None:
                if hol != IDENTITY:
                    raise CocycleError(f"unmarked face {(fr, fc)} has holonomy {perm_name(hol)}")
            elif _cycle_type(hol) != (1, 2):
                raise CocycleError(
                    f"marked face {(fr, fc)} has holonomy {perm_name(hol)}, "
                    f"expected a conjugate of {perm_name(mb.tau[m])}"
                )


def _cycle_type(p: Perm) -> tuple[int, ...]:
    seen: set[int] = set()
    lengths = []
    for i in range(3):
        k = 0
        j = i
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        if k:
            lengths.append(k)
    return tuple(sorted(lengths))
