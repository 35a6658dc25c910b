"""Connecting domains and the partition of generators into sectors.

A two-chain ``D`` lies in pi_2(x, y) exactly when its twist vector equals
``chi_x - chi_y`` (indicator vectors of the point sets), so ``x`` and ``y``
are connected iff that difference lies in the integer span of the twist
columns of the elementary domains.  Basepoint multiplicities are left free.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..diagram import NE, NW, SE, SW, HeegaardDiagram
from ..linalg import IntegerLattice
from .domains import DomainVector
from .generators import Generator


class SectorMap:
    """Twist lattice of a diagram with canonical sector labels."""

    def __init__(self, hd: HeegaardDiagram):
        self.hd = hd
        P = hd.num_points
        cols = [[0] * P for _ in range(hd.num_domains)]
        for p, q in enumerate(hd.quad):
            cols[q[NE]][p] += 1
            cols[q[SW]][p] += 1
            cols[q[NW]][p] -= 1
            cols[q[SE]][p] -= 1
        self.lattice = IntegerLattice(cols, P)

    def _indicator(self, x: Iterable[int]) -> list[int]:
        v = [0] * self.hd.num_points
        for p in x:
            v[p] += 1
        return v

    def label(self, x: Generator) -> tuple[int, ...]:
        """Canonical representative of ``chi_x`` modulo the twist lattice."""
        return self.lattice.reduce(self._indicator(x))[0]

    def connecting_domain(self, x: Generator, y: Generator) -> DomainVector | None:
        v = self._indicator(x)
        for p in y:
            v[p] -= 1
        coef = self.lattice.solve(v)
        return None if coef is None else tuple(coef)


def sector_of(sm: SectorMap, x: Generator) -> tuple[int, ...]:
    return sm.label(x)


def connecting_domain(sm: SectorMap, x: Generator, y: Generator) -> DomainVector | None:
    return sm.connecting_domain(x, y)


def partition_sectors(sm: SectorMap, gens: Sequence[Generator]) -> list[list[Generator]]:
    """Generators grouped by sector, groups ordered by first appearance."""
    groups: dict[tuple[int, ...], list[Generator]] = {}
    for x in gens:
        groups.setdefault(sm.label(x), []).append(x)
    return list(groups.values())
