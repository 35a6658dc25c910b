"""Generators: one intersection point on every alpha and every beta curve.

A generator is stored as a tuple ``x`` of point ids with ``x[a]`` the point
on alpha curve ``a``.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence

from ..diagram import HeegaardDiagram

Generator = tuple[int, ...]


def permanent(matrix: Sequence[Sequence[int]]) -> int:
    """Ryser's inclusion-exclusion formula with Gray-code updates."""
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise ValueError("permanent needs a square matrix")
    cols = [[matrix[i][j] for i in range(n)] for j in range(n)]
    sums = [0] * n
    total = 0
    sign_n = -1 if n % 2 else 1
    prev = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        j = (gray ^ prev).bit_length() - 1
        col = cols[j]
        if gray & (1 << j):
            for i in range(n):
                sums[i] += col[i]
        else:
            for i in range(n):
                sums[i] -= col[i]
        prev = gray
        prod = 1
        for s in sums:
            if s == 0:
                prod = 0
                break
            prod *= s
        if prod:
            size = bin(gray).count("1")
            total += prod if (size % 2 == 0) == (sign_n > 0) else -prod
    return total


def count_generators(hd: HeegaardDiagram) -> int:
    if hd.num_alpha != hd.num_beta:
        return 0
    return permanent(hd.intersection_matrix())


def enumerate_generators(hd: HeegaardDiagram) -> Iterator[Generator]:
    """All generators by backtracking over alpha curves, in lexicographic
    order of point ids."""
    if hd.num_alpha != hd.num_beta:
        return
    cands = [sorted(pts) for pts in hd.alpha_points]
    beta = hd.point_beta
    used = [False] * hd.num_beta
    chosen: list[int] = []
    g = hd.num_alpha

    def rec(a: int) -> Iterator[Generator]:
        if a == g:
            yield tuple(chosen)
            return
        for p in cands[a]:
            b = beta[p]
            if not used[b]:
                used[b] = True
                chosen.append(p)
                yield from rec(a + 1)
                chosen.pop()
                used[b] = False

    yield from rec(0)


def count_by_enumeration(hd: HeegaardDiagram) -> int:
    """Count perfect matchings with memoisation on the set of used betas."""
    if hd.num_alpha != hd.num_beta:
        return 0
    rows = [[hd.point_beta[p] for p in pts] for pts in hd.alpha_points]
    memo: dict[int, int] = {}

    def rec(a: int, used: int) -> int:
        if a == len(rows):
            return 1
        if used in memo:
            return memo[used]
        total = 0
        for b in rows[a]:
            if not used >> b & 1:
                total += rec(a + 1, used | 1 << b)
        memo[used] = total
        return total

    return rec(0, 0)


def random_generator(hd: HeegaardDiagram, rng: random.Random) -> Generator:
    """A generator from randomised backtracking; deterministic given ``rng``."""
    g = hd.num_alpha
    beta = hd.point_beta
    order = list(range(g))
    rng.shuffle(order)
    cands = {a: list(hd.alpha_points[a]) for a in order}
    for a in order:
        rng.shuffle(cands[a])
    used = [False] * hd.num_beta
    chosen = [-1] * g

    def rec(i: int) -> bool:
        if i == g:
            return True
        a = order[i]
        for p in cands[a]:
            b = beta[p]
            if not used[b]:
                used[b] = True
                chosen[a] = p
                if rec(i + 1):
                    return True
                used[b] = False
        return False

    if not rec(0):
        raise ValueError("diagram has no generators")
    return tuple(chosen)


def sample_generators(hd: HeegaardDiagram, count: int, seed: int) -> list[Generator]:
    """``count`` distinct generators (fewer if the diagram has fewer)."""
    rng = random.Random(seed)
    seen: set[Generator] = set()
    out: list[Generator] = []
    misses = 0
    while len(out) < count and misses < 50 * count:
        x = random_generator(hd, rng)
        if x in seen:
            misses += 1
            continue
        seen.add(x)
        out.append(x)
    return out


def is_generator(hd: HeegaardDiagram, x: Sequence[int]) -> bool:
    if len(x) != hd.num_alpha:
        return False
    if any(hd.point_alpha[p] != a for a, p in enumerate(x)):
        return False
    return len({hd.point_beta[p] for p in x}) == hd.num_beta
