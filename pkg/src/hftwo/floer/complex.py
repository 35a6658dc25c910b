"""The differential over F2[U]/U^2 and its square.

Coefficients in F2[U]/U^2 are stored as two-bit masks: bit ``k`` is the
coefficient of ``U^k``.  Multiplication shifts masks and drops anything
beyond ``U^1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .differential import ShapeCatalog, enumerate_differential_domains
from .generators import Generator

Coeff = int  # bit 0: U^0, bit 1: U^1


def ring_mul(a: Coeff, b: Coeff) -> Coeff:
    out = 0
    if a & 1:
        out ^= b
    if a & 2 and b & 1:
        out ^= 2
    return out & 3


def boundary(cat: ShapeCatalog, x: Generator) -> dict[Generator, Coeff]:
    """``d x`` as a map from targets to nonzero coefficients."""
    out: dict[Generator, Coeff] = {}
    for y, shape in enumerate_differential_domains(cat, x):
        c = out.get(y, 0) ^ (1 << shape.n_w)
        if c:
            out[y] = c
        else:
            out.pop(y, None)
    return out


def square(d: Callable[[Generator], dict[Generator, Coeff]], x: Generator) -> dict[Generator, Coeff]:
    """``d(d x)`` computed term by term."""
    out: dict[Generator, Coeff] = {}
    for y, c in d(x).items():
        for z, c2 in d(y).items():
            v = out.get(z, 0) ^ ring_mul(c, c2)
            if v:
                out[z] = v
            else:
                out.pop(z, None)
    return out


@dataclass
class SquareWitness:
    x: Generator
    z: Generator
    coefficient: Coeff

    def as_dict(self) -> dict:
        return {"x": list(self.x), "z": list(self.z), "coefficient": _coeff_name(self.coefficient)}


def _coeff_name(c: Coeff) -> str:
    return {1: "1", 2: "U", 3: "1+U"}.get(c, "0")


def verify_d_squared_at(cat: ShapeCatalog, x: Generator, cache: dict | None = None) -> SquareWitness | None:
    cache = {} if cache is None else cache

    def d(g: Generator) -> dict[Generator, Coeff]:
        if g not in cache:
            cache[g] = boundary(cat, g)
        return cache[g]

    sq = square(d, x)
    if not sq:
        return None
    z = min(sq)
    return SquareWitness(x, z, sq[z])


@dataclass
class ChainComplexU2:
    """Free F2[U]/U^2 complex on ``generators`` with ``edges[i]`` the list
    of ``(j, u_power)`` terms of ``d`` applied to generator ``i``."""

    generators: list = field(default_factory=list)
    edges: list[list[tuple[int, int]]] = field(default_factory=list)
    sectors: list = field(default_factory=list)

    @classmethod
    def from_terms(cls, size: int, terms: Iterable[tuple[int, int, int]]) -> "ChainComplexU2":
        """Direct construction from ``(source, target, u_power)`` triples;
        repeated terms cancel in pairs."""
        coeff: list[dict[int, int]] = [{} for _ in range(size)]
        for i, j, u in terms:
            if u not in (0, 1):
                raise ValueError("u-power must be 0 or 1")
            coeff[i][j] = coeff[i].get(j, 0) ^ (1 << u)
        edges = [_expand(c) for c in coeff]
        return cls(list(range(size)), edges, [0] * size)

    @property
    def size(self) -> int:
        return len(self.generators)

    def coefficients(self, i: int) -> dict[int, Coeff]:
        out: dict[int, Coeff] = {}
        for j, u in self.edges[i]:
            out[j] = out.get(j, 0) ^ (1 << u)
        return out

    def verify_d_squared(self) -> SquareWitness | None:
        for i in range(self.size):
            sq = square(self.coefficients, i)
            if sq:
                z = min(sq)
                return SquareWitness((i,), (z,), sq[z])
        return None

    def as_dict(self) -> dict:
        return {
            "generators": [list(g) if isinstance(g, tuple) else g for g in self.generators],
            "edges": [[i, j, u] for i, row in enumerate(self.edges) for j, u in row],
        }


def _expand(coeffs: dict[int, Coeff]) -> list[tuple[int, int]]:
    return [(j, u) for j in sorted(coeffs) for u in (0, 1) if coeffs[j] >> u & 1]


def build_complex(cat: ShapeCatalog, generators: Sequence[Generator], sectors: Sequence | None = None) -> ChainComplexU2:
    """The complex spanned by ``generators``, which must be closed under
    ``d`` (a union of whole sectors)."""
    index = {x: i for i, x in enumerate(generators)}
    edges = []
    for x in generators:
        row = {}
        for y, c in boundary(cat, x).items():
            if y not in index:
                raise ValueError(f"boundary of {x} leaves the generator set")
            row[index[y]] = c
        edges.append(_expand(row))
    secs = list(sectors) if sectors is not None else [0] * len(generators)
    return ChainComplexU2(list(generators), edges, secs)
