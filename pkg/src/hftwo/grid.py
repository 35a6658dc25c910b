"""Toroidal grid diagrams, the link they present, and extended grids.

Indices are 0-based internally: row ``r`` spans heights ``[r, r+1]`` and
column ``c`` spans ``[c, c+1]``; the torus identifies height ``n`` with 0.
The text format (see :func:`parse_grid`) is 1-based.

The extended grid doubles the resolution.  Fine line ``2k`` is the old curve
at height ``k``; fine line ``2k+1`` is the new curve inside row ``k``.  Each
marker is moved inside its cell to the fine cell on the side of the new
curves dictated by the side choices, which is an isotopy of the branch
points away from all curves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


class GridError(ValueError):
    """Raised for malformed or invalid grid input."""


@dataclass(frozen=True)
class GridSpec:
    n: int
    xcol: tuple[int, ...]
    ocol: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.n
        if n < 1:
            raise GridError(f"grid size must be positive, got {n}")
        for name, cols in (("X", self.xcol), ("O", self.ocol)):
            if len(cols) != n:
                raise GridError(f"{name} has {len(cols)} entries, expected {n}")
            if sorted(cols) != list(range(n)):
                raise GridError(f"{name} columns are not a permutation of 1..{n}")
        for r in range(n):
            if self.xcol[r] == self.ocol[r]:
                raise GridError(f"X and O share the cell in row {r + 1}")

    @classmethod
    def from_one_based(cls, xcol: Sequence[int], ocol: Sequence[int]) -> "GridSpec":
        return cls(len(xcol), tuple(c - 1 for c in xcol), tuple(c - 1 for c in ocol))

    def x_row(self, col: int) -> int:
        return self.xcol.index(col)

    def o_row(self, col: int) -> int:
        return self.ocol.index(col)

    def markers(self) -> list[tuple[str, int, int]]:
        """All markers as ``(kind, row, col)``, X markers first, by row."""
        return [("X", r, self.xcol[r]) for r in range(self.n)] + [
            ("O", r, self.ocol[r]) for r in range(self.n)
        ]

    def format(self, sides: str | None = None) -> str:
        lines = [
            f"n={self.n}",
            "X=" + " ".join(str(c + 1) for c in self.xcol),
            "O=" + " ".join(str(c + 1) for c in self.ocol),
        ]
        if sides is not None:
            lines.append(f"sides={sides}")
        return "\n".join(lines) + "\n"


def _ints(value: str, key: str) -> list[int]:
    try:
        return [int(tok) for tok in value.replace(",", " ").split()]
    except ValueError as exc:
        raise GridError(f"malformed integer list for {key}: {value!r}") from exc


def parse_grid_text(text: str) -> tuple[GridSpec, str | None, str | None]:
    """Parse the grid text format, returning ``(grid, sides, sigma)``.

    Lines are ``key=value`` with ``#`` comments; ``/`` also separates
    entries so one-line forms like ``"n=2 / X=2 1 / O=1 2"`` work.  The
    optional ``sides`` and ``sigma`` values are returned raw.
    """
    entries: dict[str, str] = {}
    for raw in re.split(r"[\n/]", text):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise GridError(f"expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower()
        if key in entries:
            raise GridError(f"duplicate key {key!r}")
        entries[key] = value
    for key in entries:
        if key not in {"n", "x", "o", "sides", "sigma"}:
            raise GridError(f"unknown key {key!r}")
    for key in ("n", "x", "o"):
        if key not in entries:
            raise GridError(f"missing {key}=")
    try:
        n = int(entries["n"])
    except ValueError as exc:
        raise GridError(f"malformed n: {entries['n']!r}") from exc
    xcol = _ints(entries["x"], "X")
    ocol = _ints(entries["o"], "O")
    for cols, name in ((xcol, "X"), (ocol, "O")):
        if len(cols) != n:
            raise GridError(f"{name} has {len(cols)} entries, expected {n}")
        if any(not 1 <= c <= n for c in cols):
            raise GridError(f"{name} column out of range 1..{n}")
    grid = GridSpec.from_one_based(xcol, ocol)
    return grid, entries.get("sides"), entries.get("sigma")


def parse_grid(text: str) -> GridSpec:
    return parse_grid_text(text)[0]


def load_grid(path: str | Path) -> tuple[GridSpec, str | None, str | None]:
    return parse_grid_text(Path(path).read_text())


# -- link tracing -----------------------------------------------------------


@dataclass(frozen=True)
class LinkTrace:
    components: tuple[tuple[tuple[str, int, int], ...], ...]
    crossings: tuple[tuple[int, int], ...]


def row_segment_columns(g: GridSpec, row: int) -> list[int]:
    """Columns strictly between O and X of ``row``, walking rightward from O."""
    o, x = g.ocol[row], g.xcol[row]
    return [(o + k) % g.n for k in range(1, (x - o) % g.n)]


def column_span(g: GridSpec, col: int) -> tuple[int, int]:
    """Rows ``(lo, hi)`` of the two markers of ``col``; the segment never wraps."""
    a, b = g.x_row(col), g.o_row(col)
    return (a, b) if a < b else (b, a)


def row_crossings(g: GridSpec, row: int) -> list[int]:
    """Columns whose vertical segment passes over the O-to-X segment of ``row``."""
    out = []
    for c in row_segment_columns(g, row):
        lo, hi = column_span(g, c)
        if lo < row < hi:
            out.append(c)
    return out


def trace_link(g: GridSpec) -> LinkTrace:
    seen: set[int] = set()
    components = []
    for start in range(g.n):
        if start in seen:
            continue
        comp: list[tuple[str, int, int]] = []
        r = start
        while r not in seen:
            seen.add(r)
            comp.append(("O", r, g.ocol[r]))
            c = g.xcol[r]
            comp.append(("X", r, c))
            r = g.o_row(c)
        components.append(tuple(comp))
    crossings = tuple((c, r) for r in range(g.n) for c in row_crossings(g, r))
    return LinkTrace(tuple(components), crossings)


# -- extended grid ----------------------------------------------------------


def parse_sides(text: str | None, n: int) -> tuple[tuple[bool, ...], tuple[bool, ...]]:
    """Decode a side string into ``(x_below, x_left)`` bit tuples.

    The first ``n`` letters are for the new horizontal curves (``D``: the
    row's X lies below the curve, ``U``: above); the last ``n`` are for the
    new vertical curves (``L``: the column's X lies left of it, ``R``:
    right).  ``None`` means all ``D`` / all ``L``.
    """
    if text is None:
        return (True,) * n, (True,) * n
    s = text.strip().upper().replace(" ", "")
    if len(s) != 2 * n:
        raise GridError(f"sides needs {2 * n} letters, got {len(s)}")
    h, v = s[:n], s[n:]
    if any(ch not in "DU" for ch in h) or any(ch not in "LR" for ch in v):
        raise GridError("sides: first n letters must be D/U, last n must be L/R")
    return tuple(ch == "D" for ch in h), tuple(ch == "L" for ch in v)


def format_sides(x_below: Iterable[bool], x_left: Iterable[bool]) -> str:
    return "".join("D" if b else "U" for b in x_below) + "".join(
        "L" if b else "R" for b in x_left
    )


@dataclass(frozen=True)
class ExtendedGrid:
    """Fine ``2n x 2n`` grid with one marker in each fine row and column.

    ``marker_cell[m]`` is the fine cell ``(fine_row, fine_col)`` of marker
    ``m`` in the order of :meth:`GridSpec.markers`.
    """

    base: GridSpec
    x_below: tuple[bool, ...]
    x_left: tuple[bool, ...]
    marker_cell: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self) -> None:
        g = self.base
        cells = []
        for kind, r, c in g.markers():
            is_x = kind == "X"
            fr = 2 * r + (0 if self.x_below[r] == is_x else 1)
            fc = 2 * c + (0 if self.x_left[c] == is_x else 1)
            cells.append((fr, fc))
        object.__setattr__(self, "marker_cell", tuple(cells))

    @property
    def size(self) -> int:
        return 2 * self.base.n

    @property
    def num_faces(self) -> int:
        return self.size**2

    def marked_faces(self) -> dict[tuple[int, int], int]:
        return {cell: m for m, cell in enumerate(self.marker_cell)}

    def sides(self) -> str:
        return format_sides(self.x_below, self.x_left)

    @staticmethod
    def is_old(line: int) -> bool:
        return line % 2 == 0

    def strip_markers(self, row: int) -> list[int]:
        """Markers whose fine cell lies in old row ``row`` (always two)."""
        return [m for m, (fr, _) in enumerate(self.marker_cell) if fr // 2 == row]


def extend_grid(g: GridSpec, sides: str | tuple | None = None) -> ExtendedGrid:
    if sides is None or isinstance(sides, str):
        below, left = parse_sides(sides, g.n)
    else:
        below, left = sides
    return ExtendedGrid(g, tuple(below), tuple(left))


def half_turn(g: GridSpec, sides: str | None = None) -> tuple[GridSpec, str]:
    """The grid rotated by a half turn with X and O exchanged.

    The rotation reverses both torus orientations; exchanging the markers
    keeps every row segment running from O to X rightwards, so the link
    picture (vertical over horizontal) is the same.  Columns and rows are
    reversed, and each new curve keeps its side bit.
    """
    n = g.n
    xcol, ocol = [0] * n, [0] * n
    for r in range(n):
        xcol[n - 1 - r] = n - 1 - g.ocol[r]
        ocol[n - 1 - r] = n - 1 - g.xcol[r]
    below, left = parse_sides(sides, n)
    return GridSpec(n, tuple(xcol), tuple(ocol)), format_sides(below[::-1], left[::-1])


def all_side_choices(n: int) -> Iterable[str]:
    for bits in range(4**n):
        below = [(bits >> i) & 1 == 0 for i in range(n)]
        left = [(bits >> (n + i)) & 1 == 0 for i in range(n)]
        yield format_sides(below, left)


FIXTURES = {
    "UNKNOT2": "n=2\nX=2 1\nO=1 2\n",
    "UNLINK4": "n=4\nX=2 1 4 3\nO=1 2 3 4\n",
    "TREFOIL5": "n=5\nX=1 2 3 4 5\nO=3 4 5 1 2\n",
}


def fixture(name: str) -> GridSpec:
    return parse_grid(FIXTURES[name.upper()])
