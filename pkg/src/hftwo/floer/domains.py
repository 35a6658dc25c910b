"""Two-chains on elementary domains and their measures.

Conventions.  Alpha curves run east, beta curves north, and every
intersection is positive.  The *twist* of a two-chain ``D`` at a point is

    t_p(D) = n_NE + n_SW - n_NW - n_SE,

and ``D`` connects ``x`` to ``y`` exactly when ``t_p(D) = [p in x] - [p in y]``
for every point.  This is ``d(d_alpha D) = y - x`` with the boundary of
``D`` read with the surface orientation; an empty rectangle from ``x`` to
``y`` has its ``x`` corners at the lower left and upper right.

Local multiplicities and the point measure are kept in quarter units.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..diagram import NE, NW, SE, SW, HeegaardDiagram

DomainVector = tuple[int, ...]


def zero_domain(hd: HeegaardDiagram) -> DomainVector:
    return (0,) * hd.num_domains


def add(a: Sequence[int], b: Sequence[int]) -> DomainVector:
    return tuple(i + j for i, j in zip(a, b))


def twist(hd: HeegaardDiagram, D: Sequence[int]) -> list[int]:
    return [D[q[NE]] + D[q[SW]] - D[q[NW]] - D[q[SE]] for q in hd.quad]


def local4(hd: HeegaardDiagram, D: Sequence[int], p: int) -> int:
    """Four times the local multiplicity at point ``p``."""
    q = hd.quad[p]
    return D[q[0]] + D[q[1]] + D[q[2]] + D[q[3]]


def n_w(hd: HeegaardDiagram, D: Sequence[int]) -> int:
    return sum(D[d] for d in hd.basepoint_domains)


def endpoint(hd: HeegaardDiagram, D: Sequence[int], x: Sequence[int]) -> tuple[int, ...] | None:
    """The ``y`` with ``D`` in pi_2(x, y), or ``None`` if there is none."""
    t = twist(hd, D)
    xs = set(x)
    y = list(x)
    for p, tp in enumerate(t):
        if p in xs:
            if tp == 1:
                continue
            if tp != 0:
                return None
        elif tp == -1:
            a = hd.point_alpha[p]
            if x[a] not in xs or t[x[a]] != 1 or y[a] != x[a]:
                return None
            y[a] = p
        elif tp != 0:
            return None
    # every removed x point must have been replaced along its alpha curve
    for a, p in enumerate(x):
        if t[p] == 1 and y[a] == p:
            return None
    if len({hd.point_beta[p] for p in y}) != hd.num_beta:
        return None
    return tuple(y)


def connects(hd: HeegaardDiagram, D: Sequence[int], x: Sequence[int], y: Sequence[int]) -> bool:
    xs, ys = set(x), set(y)
    return all(tp == (p in xs) - (p in ys) for p, tp in enumerate(twist(hd, D)))


def edge_multiplicities(hd: HeegaardDiagram, D: Sequence[int]) -> tuple[list[int], list[int]]:
    """Boundary coefficients on alpha and beta arcs.

    Arc ``s`` of an alpha curve runs from point ``s`` to ``east[s]``; its
    coefficient is ``n(left) - n(right)`` = north minus south.  Beta arc
    ``s`` runs to ``north[s]`` with west minus east.
    """
    a = [D[q[NE]] - D[q[SE]] for q in hd.quad]
    b = [D[q[NW]] - D[q[NE]] for q in hd.quad]
    return a, b


@dataclass(frozen=True)
class DomainStats:
    e: Fraction
    p: Fraction
    mu: Fraction
    delta: Fraction
    delta_from_corners: Fraction
    d: int
    chiS: Fraction
    branch: Fraction
    n_w: int
    nonnegative: bool

    @property
    def formulas_agree(self) -> bool:
        return self.delta == self.delta_from_corners


def domain_stats(hd: HeegaardDiagram, D: Sequence[int], x: Sequence[int], y: Sequence[int]) -> DomainStats:
    """Euler and point measures, Maslov index and the derived counts.

    ``delta`` is ``mu - 2e``; ``delta_from_corners`` is computed without
    the point measure at ``y``: ``2 n_x - (d_alpha D . d_beta D) - e``.
    The intersection of the two boundary chains is taken after a small
    translation of the alpha chain, averaged over the four diagonal
    directions; translating by ``v`` gives ``n_x - n_y`` measured in the
    quadrant opposite ``v``, so the average is ``n_x - n_y``.
    """
    e4 = sum(c * w for c, w in zip(D, hd.euler4))
    nx4 = sum(local4(hd, D, p) for p in x)
    ny4 = sum(local4(hd, D, p) for p in y)
    e = Fraction(e4, 4)
    p = Fraction(nx4 + ny4, 4)
    mu = e + p
    am, bm = edge_multiplicities(hd, D)
    inter4 = 0
    for q in range(hd.num_points):
        a_sum = am[hd.west[q]] + am[q]
        b_sum = bm[hd.south[q]] + bm[q]
        inter4 += hd.sign[q] * a_sum * b_sum
    delta_c = 2 * Fraction(nx4, 4) - Fraction(inter4, 4) - e
    d = sum(1 for q in x if local4(hd, D, q) != 0)
    delta = mu - 2 * e
    return DomainStats(
        e=e,
        p=p,
        mu=mu,
        delta=delta,
        delta_from_corners=delta_c,
        d=d,
        chiS=d - delta,
        branch=mu - e - Fraction(d, 2),
        n_w=n_w(hd, D),
        nonnegative=min(D, default=0) >= 0,
    )


def corner_profile(hd: HeegaardDiagram, D: Sequence[int], x: Sequence[int], y: Sequence[int]) -> list[Fraction]:
    """Sorted nonzero local multiplicities at the points of x and y (a shared
    coordinate is listed once)."""
    pts = sorted(set(x) | set(y))
    vals = [Fraction(local4(hd, D, p), 4) for p in pts]
    return sorted(v for v in vals if v)


def is_embedded(D: Sequence[int]) -> bool:
    return all(c in (0, 1) for c in D)
