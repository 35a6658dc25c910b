"""Structural checks on an adapted diagram, with witnesses.

Items follow the list of basic properties of adapted diagrams:

1. every elementary domain is a rectangle without basepoint or an octagon
   with exactly one;
2. alpha curves and beta curves each cut the surface into pairs of pants,
   one octagon in each;
3. an alpha and a beta curve that meet do so once, or twice with equal
   signs and only when both are new (pairs that do not meet are reported
   as findings, not failures);
4. a generator projects to one point on each new grid curve and two on each
   old one (checked on sampled generators);
5. over every grid intersection there are one or two diagram intersections;
6. admissibility: no nonzero non-negative periodic domain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from ..diagram import NE, SW, HeegaardDiagram
from ..linalg import integer_kernel, nonneg_solution
from .surface import SurfaceComplex


@dataclass
class ItemReport:
    item: str
    passed: bool
    detail: str = ""
    witnesses: list = field(default_factory=list)
    findings: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "item": self.item,
            "status": "pass" if self.passed else "fail",
            "detail": self.detail,
            "witnesses": self.witnesses[:10],
            "findings": len(self.findings),
        }


def twist_rows(hd: HeegaardDiagram) -> list[list[int]]:
    """Twist of each elementary domain at each point, as a points x domains
    matrix."""
    rows = [[0] * hd.num_domains for _ in range(hd.num_points)]
    for p, q in enumerate(hd.quad):
        for slot, d in enumerate(q):
            rows[p][d] += 1 if slot in (NE, SW) else -1
    return rows


def check_domains(hd: HeegaardDiagram, surf: SurfaceComplex) -> ItemReport:
    bad = []
    for d in range(hd.num_domains):
        kind = hd.domain_kind(d)
        n_oct = sum(surf.faces[f].octagon for f in hd.domain_faces[d])
        ok = (kind == "rectangle" and not hd.domain_basepoint[d]) or (
            kind == "octagon" and hd.domain_basepoint[d] and n_oct == 1
        )
        if not ok:
            bad.append({"domain": d, "kind": kind, "basepoint": hd.domain_basepoint[d]})
    n_oct = sum(hd.domain_kind(d) == "octagon" for d in range(hd.num_domains))
    return ItemReport(
        "1 elementary domains",
        not bad,
        f"{hd.num_domains} domains, {n_oct} octagons",
        bad,
    )


def pants_components(hd: HeegaardDiagram, surf: SurfaceComplex, kind: str) -> list[dict]:
    """Components of the surface cut along the kept curves of ``kind``
    (``"a"`` or ``"b"``) with their Euler characteristic and octagon count."""
    lifts = surf.lifts
    cut = {k for k, lf in enumerate(lifts) if lf.kind == kind and lf.kept}
    nf = len(surf.faces)
    parent = list(range(nf))

    def find(f: int) -> int:
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    for e in surf.edges:
        if e.lift not in cut:
            a, b = find(e.left), find(e.right)
            if a != b:
                parent[max(a, b)] = min(a, b)
    comp: dict[int, dict] = {}
    for f in range(nf):
        c = comp.setdefault(find(f), {"faces": 0, "edges": 0, "vertices": 0, "octagons": 0})
        c["faces"] += 1
        c["octagons"] += surf.faces[f].octagon
    for e in surf.edges:
        if e.lift not in cut:
            comp[find(e.left)]["edges"] += 1
    la, lb = surf.lift_of_vertex()
    a_out = surf.vertex_edges()[0]
    for v in range(len(surf.vertices)):
        on = la[v] in cut or lb[v] in cut
        if not on:
            comp[find(surf.edges[a_out[v]].left)]["vertices"] += 1
    out = []
    for root in sorted(comp):
        c = comp[root]
        # boundary circles contribute zero to the Euler characteristic
        out.append({"euler": c["faces"] - c["edges"] + c["vertices"], "octagons": c["octagons"]})
    return out


def check_pants(hd: HeegaardDiagram, surf: SurfaceComplex) -> ItemReport:
    n_bp = len(hd.basepoint_domains)
    bad = []
    detail = []
    for kind, name in (("a", "alpha"), ("b", "beta")):
        comps = pants_components(hd, surf, kind)
        detail.append(f"{name}: {len(comps)} components")
        if len(comps) != n_bp:
            bad.append({"curves": name, "components": len(comps), "expected": n_bp})
        for i, c in enumerate(comps):
            if c["euler"] != -1 or c["octagons"] != 1:
                bad.append({"curves": name, "component": i, **c})
    return ItemReport("2 pants decompositions", not bad, "; ".join(detail), bad)


def check_pairs(hd: HeegaardDiagram) -> ItemReport:
    bad, zero = [], []
    for a in range(hd.num_alpha):
        for b in range(hd.num_beta):
            pts = hd.pair_points.get((a, b), [])
            if not pts:
                zero.append({"alpha": a, "beta": b, "old": [hd.alpha_old[a], hd.beta_old[b]]})
            elif len(pts) == 2:
                both_new = not hd.alpha_old[a] and not hd.beta_old[b]
                signs = {hd.sign[p] for p in pts}
                if not both_new or len(signs) != 1:
                    bad.append({"alpha": a, "beta": b, "points": pts, "signs": sorted(signs)})
            elif len(pts) > 2:
                bad.append({"alpha": a, "beta": b, "points": pts})
    counts = {}
    for a in range(hd.num_alpha):
        for b in range(hd.num_beta):
            k = len(hd.pair_points.get((a, b), []))
            counts[k] = counts.get(k, 0) + 1
    rep = ItemReport(
        "3 alpha-beta intersections",
        not bad,
        "pair counts by intersection number: " + ", ".join(f"{k}:{v}" for k, v in sorted(counts.items())),
        bad,
    )
    rep.findings = zero
    return rep


def projection_counts(hd: HeegaardDiagram, x) -> tuple[dict[int, int], dict[int, int]]:
    """Points of ``pi(x)`` on each horizontal and each vertical fine line."""
    rows: dict[int, int] = {}
    cols: dict[int, int] = {}
    for p in x:
        px, py = hd.point_proj[p]
        rows[py] = rows.get(py, 0) + 1
        cols[px] = cols.get(px, 0) + 1
    return rows, cols


def check_projection(hd: HeegaardDiagram, samples: int = 64, seed: int = 0) -> ItemReport:
    from ..floer.generators import sample_generators

    N = hd.grid_size
    bad = []
    gens = sample_generators(hd, samples, seed)
    for x in gens:
        rows, cols = projection_counts(hd, x)
        for line in range(N):
            want = 2 if line % 2 == 0 else 1
            if rows.get(line, 0) != want or cols.get(line, 0) != want:
                bad.append({"generator": list(x), "line": line})
                break
    return ItemReport("4 generator projections", not bad, f"{len(gens)} sampled generators", bad)


def check_fibres(hd: HeegaardDiagram) -> ItemReport:
    N = hd.grid_size
    counts: dict[tuple[int, int], int] = {}
    for pr in hd.point_proj:
        counts[pr] = counts.get(pr, 0) + 1
    bad = []
    for px in range(N):
        for py in range(N):
            k = counts.get((px, py), 0)
            if k not in (1, 2):
                bad.append({"grid_point": [px, py], "preimages": k})
    return ItemReport("5 intersection fibres", not bad, f"{N * N} grid intersections", bad)


# -- periodic domains ----------------------------------------------------------


@dataclass
class PeriodicDomainLattice:
    basis: list[list[int]]
    saturated: bool
    num_domains: int

    @property
    def rank(self) -> int:
        return len(self.basis)


def periodic_lattice(hd: HeegaardDiagram) -> PeriodicDomainLattice:
    """Chains with zero twist everywhere and zero multiplicity at every
    basepoint."""
    rows = twist_rows(hd)
    for d in hd.basepoint_domains:
        rows.append([int(j == d) for j in range(hd.num_domains)])
    basis, saturated = integer_kernel(rows, hd.num_domains)
    return PeriodicDomainLattice(basis, saturated, hd.num_domains)


@dataclass
class AdmissibilityReport:
    admissible: bool
    rank: int
    counterexample: list[int] | None = None


def check_admissibility(hd: HeegaardDiagram, lattice: PeriodicDomainLattice | None = None) -> AdmissibilityReport:
    """Decide whether a nonzero non-negative periodic domain exists.

    Such a domain can be scaled to total multiplicity one, so this is the
    linear feasibility problem ``D >= 0``, zero twist, zero at the
    basepoints and ``sum(D) = 1``, solved exactly.
    """
    if lattice is None:
        lattice = periodic_lattice(hd)
    r = lattice.rank
    if r == 0:
        return AdmissibilityReport(True, 0)
    bp = set(hd.basepoint_domains)
    cols = [d for d in range(hd.num_domains) if d not in bp]
    rows = [[row[d] for d in cols] for row in twist_rows(hd) if any(row[d] for d in cols)]
    rows.append([1] * len(cols))
    sol = nonneg_solution(rows, [0] * (len(rows) - 1) + [1])
    if sol is None:
        return AdmissibilityReport(True, r)
    den = 1
    for v in sol:
        den = den * v.denominator // gcd(den, v.denominator)
    D = [0] * hd.num_domains
    for d, v in zip(cols, sol):
        D[d] = int(v * den)
    return AdmissibilityReport(False, r, D)


@dataclass
class PropertyReport:
    items: list[ItemReport]
    admissibility: AdmissibilityReport

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items) and self.admissibility.admissible

    def as_dict(self) -> dict:
        out = [i.as_dict() for i in self.items]
        adm = self.admissibility
        out.append(
            {
                "item": "6 admissibility",
                "status": "pass" if adm.admissible else "fail",
                "detail": f"periodic lattice rank {adm.rank}",
                "witnesses": [] if adm.counterexample is None else [adm.counterexample],
                "findings": 0,
            }
        )
        return {"passed": self.passed, "items": out}


def validate_properties(
    hd: HeegaardDiagram, surf: SurfaceComplex, samples: int = 64, seed: int = 0
) -> PropertyReport:
    items = [
        check_domains(hd, surf),
        check_pants(hd, surf),
        check_pairs(hd),
        check_projection(hd, samples, seed),
        check_fibres(hd),
    ]
    lattice = periodic_lattice(hd)
    return PropertyReport(items, check_admissibility(hd, lattice))

