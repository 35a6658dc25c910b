"""Homology of an F2[U]/U^2 complex and its U-module structure.

Over F2 the complex has basis ``{x, U x}``.  Homology decomposes into free
summands F2[U]/U^2 (rank two, U nonzero) and F2 summands (U zero), so

    rank H = 2 * free + f2,      free = rank of U acting on H.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..linalg import gf2_kernel, gf2_rank
from .complex import ChainComplexU2


@dataclass
class HomologyCounts:
    rank: int
    free: int
    f2: int

    def as_dict(self) -> dict:
        return {"rank": self.rank, "free": self.free, "f2": self.f2}


@dataclass
class ReducedCounts:
    k: int
    divisible: bool
    rank: int | None = None
    free: int | None = None
    f2: int | None = None

    def as_dict(self) -> dict:
        out = {"k": self.k, "divisible": self.divisible}
        if self.divisible:
            out.update(rank=self.rank, free=self.free, f2=self.f2)
        else:
            out["status"] = "reduction inapplicable"
        return out


@dataclass
class HomologyReport:
    total: HomologyCounts
    sectors: list[HomologyCounts] = field(default_factory=list)
    reduced: ReducedCounts | None = None
    status: str = "computed"

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "total": self.total.as_dict(),
            "sectors": [s.as_dict() for s in self.sectors],
            "reduced": None if self.reduced is None else self.reduced.as_dict(),
        }


def homology_counts(cx: ChainComplexU2, members: list[int] | None = None) -> HomologyCounts:
    """Counts for the subcomplex on ``members`` (all generators if None);
    the subset must be closed under the differential."""
    idx = list(range(cx.size)) if members is None else list(members)
    pos = {g: i for i, g in enumerate(idx)}
    G = len(idx)
    # coordinates: i for x_i, G + i for U x_i
    cols = []
    for g in idx:
        v = 0
        for j, u in cx.edges[g]:
            v ^= 1 << (pos[j] + G * u)
        cols.append(v)
    low = (1 << G) - 1
    for v in list(cols):
        cols.append((v & low) << G)  # d(U x) = U d(x)
    r = gf2_rank(cols)
    rank = 2 * G - 2 * r
    cycles = gf2_kernel(cols)
    u_cycles = [(z & low) << G for z in cycles]
    free = gf2_rank(cols + u_cycles) - r
    return HomologyCounts(rank, free, rank - 2 * free)


def divide_basepoint_factor(counts: HomologyCounts, k: int) -> ReducedCounts:
    """Divide out the tensor factor of rank ``2^(k-1)`` with trivial U
    action contributed by ``k`` basepoints."""
    if k < 1:
        raise ValueError("k must be at least 1")
    m = 2 ** (k - 1)
    if counts.free % m or counts.f2 % m or counts.rank % m:
        return ReducedCounts(k, False)
    return ReducedCounts(k, True, counts.rank // m, counts.free // m, counts.f2 // m)


def homology(cx: ChainComplexU2, k: int | None = None) -> HomologyReport:
    by_sector: dict = {}
    for i, s in enumerate(cx.sectors):
        by_sector.setdefault(s, []).append(i)
    sectors = [homology_counts(cx, members) for members in by_sector.values()]
    total = HomologyCounts(
        sum(s.rank for s in sectors), sum(s.free for s in sectors), sum(s.f2 for s in sectors)
    )
    reduced = divide_basepoint_factor(total, k) if k is not None else None
    return HomologyReport(total, sectors, reduced)


def skipped_report(generator_count: int, budget: int) -> dict:
    return {
        "status": "skipped: budget",
        "generators": generator_count,
        "budget": budget,
    }
