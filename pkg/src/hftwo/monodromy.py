"""Simple 3-fold branched cover data: one transposition per grid column.

Permutations of the sheets ``{0, 1, 2}`` are tuples ``p`` with ``p[i]`` the
image of ``i``.  Transpositions are written with 1-based sheet names, so
``"12"`` swaps sheets 0 and 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .grid import GridSpec, row_crossings

Perm = tuple[int, int, int]

IDENTITY: Perm = (0, 1, 2)
TRANSPOSITIONS: dict[str, Perm] = {"12": (1, 0, 2), "13": (2, 1, 0), "23": (0, 2, 1)}
_NAMES = {p: k for k, p in TRANSPOSITIONS.items()}


def compose(a: Perm, b: Perm) -> Perm:
    """``a`` after ``b``."""
    return (a[b[0]], a[b[1]], a[b[2]])


def inverse(a: Perm) -> Perm:
    out = [0, 0, 0]
    for i, j in enumerate(a):
        out[j] = i
    return (out[0], out[1], out[2])


def conjugate(p: Perm, by: Perm) -> Perm:
    return compose(by, compose(p, inverse(by)))


def perm_name(p: Perm) -> str:
    if p == IDENTITY:
        return "id"
    if p in _NAMES:
        return _NAMES[p]
    return "".join(str(i + 1) for i in p)


def all_perms() -> list[Perm]:
    return [tuple(p) for p in itertools.permutations(range(3))]  # type: ignore[misc]


class MonodromyError(ValueError):
    pass


@dataclass(frozen=True)
class Monodromy:
    sigma: tuple[Perm, ...]

    def __post_init__(self) -> None:
        for j, p in enumerate(self.sigma):
            if p not in _NAMES:
                raise MonodromyError(f"column {j + 1}: {p} is not a transposition")

    @classmethod
    def parse(cls, text: str) -> "Monodromy":
        toks = text.replace(",", " ").replace("(", " ").replace(")", " ").split()
        try:
            return cls(tuple(TRANSPOSITIONS["".join(sorted(t))] for t in toks))
        except KeyError as exc:
            raise MonodromyError(f"bad transposition {exc.args[0]!r} in {text!r}") from None

    def format(self) -> str:
        return " ".join(perm_name(p) for p in self.sigma)

    def relabel(self, by: Perm) -> "Monodromy":
        return Monodromy(tuple(conjugate(p, by) for p in self.sigma))

    def reversed_columns(self) -> "Monodromy":
        """Labels for the half-turned grid, where column ``j`` becomes
        column ``n - 1 - j``."""
        return Monodromy(self.sigma[::-1])


@dataclass(frozen=True)
class MarkerBranching:
    tau: tuple[Perm, ...]  # indexed like GridSpec.markers()


def marker_transpositions(g: GridSpec, m: Monodromy) -> MarkerBranching:
    _check_len(g, m)
    return MarkerBranching(tuple(m.sigma[c] for _, _, c in g.markers()))


@dataclass(frozen=True)
class WirtingerFailure:
    row: int
    computed: Perm
    expected: Perm

    def __str__(self) -> str:
        return (
            f"row {self.row + 1}: walked label {perm_name(self.computed)} "
            f"!= {perm_name(self.expected)} at the X marker"
        )


def validate_wirtinger(g: GridSpec, m: Monodromy) -> WirtingerFailure | None:
    """Walk every row from O to X; ``None`` when all labels match."""
    _check_len(g, m)
    for r in range(g.n):
        label = m.sigma[g.ocol[r]]
        for c in row_crossings(g, r):
            label = conjugate(label, m.sigma[c])
        expected = m.sigma[g.xcol[r]]
        if label != expected:
            return WirtingerFailure(r, label, expected)
    return None


def sheet_orbits(perms: Sequence[Perm]) -> list[frozenset[int]]:
    parent = list(range(3))

    def find(i: int) -> int:
        while parent[i] != i:
            i = parent[i]
        return i

    for p in perms:
        for i in range(3):
            a, b = find(i), find(p[i])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, set[int]] = {}
    for i in range(3):
        groups.setdefault(find(i), set()).add(i)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def validate_transitive(m: Monodromy) -> list[frozenset[int]] | None:
    """``None`` if the sheets form one orbit, else the orbit partition."""
    orbits = sheet_orbits(m.sigma)
    return None if len(orbits) == 1 else orbits


def enumerate_monodromies(g: GridSpec) -> list[Monodromy]:
    names = sorted(TRANSPOSITIONS)
    out = []
    for combo in itertools.product(names, repeat=g.n):
        m = Monodromy(tuple(TRANSPOSITIONS[k] for k in combo))
        if validate_transitive(m) is None and validate_wirtinger(g, m) is None:
            out.append(m)
    return out


def _check_len(g: GridSpec, m: Monodromy) -> None:
    if len(m.sigma) != g.n:
        raise MonodromyError(f"sigma has {len(m.sigma)} entries, grid has {g.n} columns")
