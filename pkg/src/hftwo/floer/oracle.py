"""Exhaustive search for non-negative domains out of a generator.

A two-chain ``D`` is recovered from its boundary.  Along an alpha curve the
coefficient of ``d_alpha D`` is a constant ``c`` except on the arc running
east from the curve's ``x`` point to its ``y`` point, where it is ``c + 1``.
Crossing alpha arcs only, these coefficients fix ``D`` on each component of
the complement of the beta curves up to one constant per component.  So
every candidate is described by

* for every alpha curve: stay, or move east to a chosen ``y`` point;
* for every alpha curve: the constant ``c``;
* for every beta complement component: an additive constant,

and distinct descriptions give distinct chains.  The search runs through
all descriptions allowed by three necessary conditions: entries at most
``max_coeff``, ``y`` a generator, and the Maslov budget.  Every chain is
then checked against all twist constraints, the coefficient bound,
``n_w`` and the Maslov index.

The budget.  For a non-negative chain the local multiplicity at a point is
at least a quarter of ``|m_in| + |m_out|`` for the alpha coefficients on
either side.  Summing over the ``x`` and ``y`` points of each alpha curve
(a coordinate kept in both ends counts twice) bounds the point measure
from below, and the Euler measure is bounded below by the basepoint cap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
import numpy as np

from ..diagram import NE, SE, HeegaardDiagram
from .domains import DomainVector, twist
from .generators import Generator


@dataclass
class OracleResult:
    results: list[tuple[Generator, DomainVector]] = field(default_factory=list)
    complete: bool = True
    nodes: int = 0

    @property
    def status(self) -> str:
        return "complete" if self.complete else "incomplete"


class _Budget(Exception):
    pass


class BoundaryModel:
    """Linear map from alpha-arc coefficients to chains, per diagram."""

    def __init__(self, hd: HeegaardDiagram):
        self.hd = hd
        nd, P = hd.num_domains, hd.num_points
        # alpha arc s joins north domain quad[s][NE] and south domain quad[s][SE]
        parent = list(range(nd))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        adj: list[list[tuple[int, int, int]]] = [[] for _ in range(nd)]
        for s in range(P):
            north, south = hd.quad[s][NE], hd.quad[s][SE]
            adj[south].append((north, s, 1))
            adj[north].append((south, s, -1))
            parent[find(north)] = find(south)
        comps: dict[int, list[int]] = {}
        for d in range(nd):
            comps.setdefault(find(d), []).append(d)
        bp = set(hd.basepoint_domains)
        self.components = sorted(comps.values(), key=min)
        self.roots = []
        # path[d]: arcs with signs from the root of d's component to d
        path: list[list[tuple[int, int]] | None] = [None] * nd
        tree_arcs: set[int] = set()
        for comp in self.components:
            root = min((d for d in comp if d in bp), default=min(comp))
            self.roots.append(root)
            path[root] = []
            queue = deque([root])
            while queue:
                d = queue.popleft()
                for o, s, sgn in adj[d]:
                    if path[o] is None:
                        path[o] = path[d] + [(s, sgn)]
                        tree_arcs.add(s)
                        queue.append(o)
        checks = [s for s in range(P) if s not in tree_arcs]
        K = len(checks)
        W = np.zeros((P, nd + K), dtype=np.int64)
        for d in range(nd):
            for s, sgn in path[d]:
                W[s, d] += sgn
        for k, s in enumerate(checks):
            north, south = hd.quad[s][NE], hd.quad[s][SE]
            # D(north) - D(south) - m(s) must vanish
            W[:, nd + k] = W[:, north] - W[:, south]
            W[s, nd + k] -= 1
        self.W = W
        self.nd = nd
        self.comp_of = [0] * nd
        for j, comp in enumerate(self.components):
            for d in comp:
                self.comp_of[d] = j
        self.comp_index = [np.array(c, dtype=np.int64) for c in self.components]
        self.comp_bp = [[d for d in c if d in bp] for c in self.components]
        # per alpha curve: arcs in order and prefix sums of their rows
        self.prefix = []
        self.position = [0] * P
        for pts in hd.alpha_points:
            rows = W[pts]
            pre = np.zeros((len(pts) + 1, W.shape[1]), dtype=np.int64)
            np.cumsum(rows, axis=0, out=pre[1:])
            self.prefix.append(pre)
            for i, p in enumerate(pts):
                self.position[p] = i

    def arc_vector(self, a: int, i: int, j: int) -> np.ndarray:
        """Sum of rows for the arcs from position ``i`` east to ``j``."""
        pre = self.prefix[a]
        if i <= j:
            return pre[j] - pre[i]
        return pre[-1] - pre[i] + pre[j]

    def full_vector(self, a: int) -> np.ndarray:
        return self.prefix[a][-1]


def oracle_search(
    hd: HeegaardDiagram,
    x: Generator,
    max_coeff: int = 2,
    mu_target: int = 1,
    nw_max: int = 1,
    budget: int | None = 5_000_000,
    model: BoundaryModel | None = None,
) -> OracleResult:
    """Every non-negative chain from ``x`` with entries at most
    ``max_coeff``, Maslov index ``mu_target`` and ``n_w <= nw_max``.

    Results are sorted by ``(y, chain)``.  More than ``budget`` search
    nodes marks the result incomplete instead of truncating silently.
    """
    if model is None:
        model = BoundaryModel(hd)
    M = max_coeff
    nd = hd.num_domains
    bp = hd.basepoint_domains
    e4_floor = nw_max * min([0] + [hd.euler4[b] for b in bp])
    e4_floor += M * sum(min(0, hd.euler4[d]) for d in range(nd) if d not in set(bp))
    budget4 = 4 * mu_target - e4_floor
    res = OracleResult()
    if budget4 < 0:
        return res

    g = hd.num_alpha
    x_beta = [hd.point_beta[p] for p in x]
    beta_owner = {b: a for a, b in enumerate(x_beta)}
    # options per alpha curve: (cost4, y point or -1, vector)
    options: list[list[tuple[int, int, np.ndarray]]] = []
    for a in range(g):
        pts = hd.alpha_points[a]
        i = model.position[x[a]]
        full = model.full_vector(a)
        opts = []
        for c in range(-M, M + 1):
            cost = 4 * abs(c)
            if cost <= budget4:
                opts.append((cost, -1, c * full))
            if c + 1 > M:
                continue
            cost = 2 * (abs(c) + abs(c + 1))
            if cost > budget4:
                continue
            for j, yp in enumerate(pts):
                if j == i:
                    continue
                opts.append((cost, yp, c * full + model.arc_vector(a, i, j)))
        opts.sort(key=lambda o: o[0])
        options.append(opts)
    min_rest = [0] * (g + 1)
    for a in range(g - 1, -1, -1):
        min_rest[a] = min_rest[a + 1] + options[a][0][0]

    xs = set(x)
    target4 = 4 * mu_target
    ys = list(x)
    taken: set[int] = set()  # betas of moved y points
    freed: set[int] = set()  # betas of moved x points

    def leaf(vec: np.ndarray) -> None:
        if vec[nd:].any():
            return
        base = vec[:nd]
        choices = []
        for j, idx in enumerate(model.comp_index):
            vals = base[idx]
            lo, hi = -int(vals.min()), M - int(vals.max())
            if lo > hi:
                return
            choices.append(range(lo, hi + 1))
        for ks in _bounded_product(choices, model, base, nw_max):
            D = base.copy()
            for j, k in enumerate(ks):
                if k:
                    D[model.comp_index[j]] += k
            Dt = tuple(int(v) for v in D)
            if sum(Dt[b] for b in bp) > nw_max:
                continue
            t = twist(hd, Dt)
            ok = True
            ys_set = set(ys)
            for p, tp in enumerate(t):
                if tp != (p in xs) - (p in ys_set):
                    ok = False
                    break
            if not ok:
                continue
            mu4 = sum(c * w for c, w in zip(Dt, hd.euler4))
            for p in x:
                mu4 += sum(Dt[d] for d in hd.quad[p])
            for p in ys:
                mu4 += sum(Dt[d] for d in hd.quad[p])
            if mu4 == target4:
                res.results.append((tuple(ys), Dt))

    def rec(a: int, spent: int, vec: np.ndarray) -> None:
        res.nodes += 1
        if budget is not None and res.nodes > budget:
            raise _Budget
        if a == g:
            if taken == freed:
                leaf(vec)
            return
        for cost, yp, v in options[a]:
            if spent + cost + min_rest[a + 1] > budget4:
                break
            if yp >= 0:
                by = hd.point_beta[yp]
                owner = beta_owner[by]
                # the beta of y must be released by a moving x coordinate
                if by in taken or (owner < a and ys[owner] == x[owner]):
                    continue
                taken.add(by)
                freed.add(x_beta[a])
                ys[a] = yp
                rec(a + 1, spent + cost, vec + v)
                ys[a] = x[a]
                freed.discard(x_beta[a])
                taken.discard(by)
            elif x_beta[a] not in taken:
                rec(a + 1, spent + cost, vec + v)

    try:
        rec(0, 0, np.zeros(model.W.shape[1], dtype=np.int64))
    except _Budget:
        res.complete = False
    res.results.sort()
    return res


def _bounded_product(choices, model: BoundaryModel, base: np.ndarray, nw_max: int):
    """Component constants with the basepoint total capped."""
    fixed = [sum(int(base[b]) for b in bps) for bps in model.comp_bp]
    counts = [len(bps) for bps in model.comp_bp]
    out = []

    def rec(j: int, nw: int, acc: list[int]) -> None:
        if j == len(choices):
            out.append(tuple(acc))
            return
        for k in choices[j]:
            w = fixed[j] + k * counts[j]
            if counts[j] and (w < 0 or nw + w > nw_max):
                continue
            acc.append(k)
            rec(j + 1, nw + (w if counts[j] else 0), acc)
            acc.pop()

    rec(0, 0, [])
    return out

