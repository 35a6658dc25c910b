"""Exact linear algebra: rationals, integer lattices, GF(2) and
non-negative feasibility."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


# -- rationals ---------------------------------------------------------------


def rref(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        prow = m[r] = [v * inv for v in m[r]]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row = m[i]
                for j in nz:
                    row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], bool]:
    """Integer basis of the rational kernel, one vector per free column.

    The flag says whether the basis spans every integer kernel vector; it
    does when the reduced form is integral, since the free coordinates then
    determine the pivot coordinates integrally.
    """
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)], True
    m, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    saturated = all(v.denominator == 1 for row in m for v in row)
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, pc in zip(m, pivots):
            vec[pc] = -row[f]
        den = 1
        for v in vec:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v * den) for v in vec]
        g = 0
        for v in ints:
            g = gcd(g, v)
        basis.append([v // g for v in ints])
    return basis, saturated


def rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(rref(rows, ncols)[1]) if rows else 0


# -- integer lattices --------------------------------------------------------


class IntegerLattice:
    """Sublattice of ``Z^dim`` spanned by integer vectors, in Hermite form.

    ``basis[i]`` has its first nonzero entry (positive) at ``pivot[i]``,
    pivots increase, and entries above each pivot are reduced into
    ``[0, pivot value)``.  ``combo[i]`` expresses ``basis[i]`` in the
    original generators, so membership tests return coefficients.
    """

    def __init__(self, gens: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        self.ngens = len(gens)
        rows = [list(v) for v in gens]
        combos = [[int(i == j) for j in range(len(gens))] for i in range(len(gens))]
        basis: list[list[int]] = []
        comb: list[list[int]] = []
        pivots: list[int] = []
        col = 0
        while rows and col < dim:
            live = [i for i, r in enumerate(rows) if r[col] != 0]
            if not live:
                col += 1
                continue
            # Euclid on column ``col`` until a single nonzero entry remains
            while len(live) > 1:
                k = min(live, key=lambda i: abs(rows[i][col]))
                for i in live:
                    if i == k:
                        continue
                    q = rows[i][col] // rows[k][col]
                    if q:
                        rows[i] = [a - q * b for a, b in zip(rows[i], rows[k])]
                        combos[i] = [a - q * b for a, b in zip(combos[i], combos[k])]
                live = [i for i, r in enumerate(rows) if r[col] != 0]
            k = live[0]
            r, c = rows.pop(k), combos.pop(k)
            if r[col] < 0:
                r = [-a for a in r]
                c = [-a for a in c]
            basis.append(r)
            comb.append(c)
            pivots.append(col)
            rows = [r2 for r2 in rows]
            keep = [i for i, r2 in enumerate(rows) if any(r2)]
            rows = [rows[i] for i in keep]
            combos = [combos[i] for i in keep]
            col += 1
        # reduce entries above pivots
        for i in range(len(basis)):
            pc = pivots[i]
            for j in range(i):
                q = basis[j][pc] // basis[i][pc]
                if q:
                    basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
                    comb[j] = [a - q * b for a, b in zip(comb[j], comb[i])]
        self.basis = basis
        self.combo = comb
        self.pivot = pivots

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence[int]) -> tuple[tuple[int, ...], list[int]]:
        """Canonical representative of ``v`` modulo the lattice, and the
        generator coefficients subtracted to reach it."""
        v = list(v)
        coef = [0] * self.ngens
        for b, c, pc in zip(self.basis, self.combo, self.pivot):
            q = v[pc] // b[pc]
            if q:
                v = [a - q * x for a, x in zip(v, b)]
                coef = [a + q * x for a, x in zip(coef, c)]
        return tuple(v), coef

    def solve(self, v: Sequence[int]) -> list[int] | None:
        """Integer coefficients on the generators summing to ``v``."""
        rem, coef = self.reduce(v)
        return coef if not any(rem) else None


# -- linear programming --------------------------------------------------------


def nonneg_solution(
    A: Sequence[Sequence[int]], b: Sequence[int], max_pivots: int = 100_000
) -> list[Fraction] | None:
    """A rational ``x >= 0`` with ``A x = b``, or ``None`` if there is none.

    Phase one of the simplex method in exact arithmetic with Bland's rule,
    so it terminates and the answer is exact.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    # tableau rows: n structural columns, m artificial columns, rhs
    T = []
    for i in range(m):
        s = -1 if b[i] < 0 else 1
        row = [Fraction(s * v) for v in A[i]] + [Fraction(int(j == i)) for j in range(m)]
        row.append(Fraction(s * b[i]))
        T.append(row)
    basis = [n + i for i in range(m)]
    # objective: minimise the sum of artificials, as reduced costs
    cost = [Fraction(0)] * (n + m + 1)
    for row in T:
        for j in range(n):
            cost[j] -= row[j]
        cost[-1] -= row[-1]
    for _ in range(max_pivots):
        col = next((j for j in range(n + m) if cost[j] < 0), None)
        if col is None:
            break
        best = None
        for i, row in enumerate(T):
            if row[col] > 0:
                ratio = row[-1] / row[col]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break  # unbounded cannot happen in phase one
        r = best[1]
        piv = T[r][col]
        prow = T[r] = [v / piv for v in T[r]]
        # the tableau stays sparse, so only touch the pivot row's support
        nz = [j for j, v in enumerate(prow) if v]
        for i in range(m):
            f = T[i][col]
            if i != r and f:
                row = T[i]
                for j in nz:
                    row[j] -= f * prow[j]
        f = cost[col]
        for j in nz:
            cost[j] -= f * prow[j]
        basis[r] = col
    else:
        raise RuntimeError("simplex pivot limit reached")
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
    return x


# -- GF(2) ---------------------------------------------------------------------


def gf2_rank(vectors: Sequence[int]) -> int:
    """Rank of bitset vectors."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def gf2_kernel(columns: Sequence[int]) -> list[int]:
    """Kernel of the map sending unit vector ``j`` to ``columns[j]``, as
    bitsets over the column indices."""
    basis: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, v in enumerate(columns):
        combo = 1 << j
        while v:
            top = v.bit_length() - 1
            if top in basis:
                bv, bc = basis[top]
                v ^= bv
                combo ^= bc
            else:
                basis[top] = (v, combo)
                break
        if not v:
            kernel.append(combo)
    return kernel
