"""Sampled checks on a diagram: the square of the differential and the
agreement of the classified differential with the exhaustive search.

Per-generator work is independent, so it can be spread over worker
processes; results come back in input order, so output does not depend
on the number of workers.
"""

from __future__ import annotations

import multiprocessing as mp
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from ..diagram import HeegaardDiagram
from .complex import verify_d_squared_at
from .differential import Shape, ShapeCatalog, enumerate_differential_domains
from .domains import corner_profile, domain_stats, is_embedded
from .generators import Generator
from .oracle import BoundaryModel, oracle_search

_STATE: dict[str, Any] = {}


def worker_count(default: int = 1) -> int:
    raw = os.environ.get("HFTWO_THREADS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def _call(item):
    return _STATE["fn"](item)


def parallel_map(fn: Callable, items: Sequence, threads: int | None = None) -> list:
    """``[fn(i) for i in items]``, over forked workers when allowed."""
    threads = worker_count() if threads is None else threads
    if threads <= 1 or len(items) < 2 or "fork" not in mp.get_all_start_methods():
        return [fn(i) for i in items]
    _STATE["fn"] = fn
    try:
        with mp.get_context("fork").Pool(threads) as pool:
            return pool.map(_call, items, chunksize=max(1, len(items) // (4 * threads)))
    finally:
        _STATE.pop("fn", None)


# -- d squared -------------------------------------------------------------------


@dataclass
class SquareSummary:
    checked: int
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def as_dict(self) -> dict:
        return {
            "checked": self.checked,
            "passed": self.passed,
            "witnesses": [w.as_dict() for w in self.witnesses[:10]],
        }


def dsq_sample(cat: ShapeCatalog, gens: Sequence[Generator], threads: int | None = None) -> SquareSummary:
    results = parallel_map(lambda x: verify_d_squared_at(cat, x), list(gens), threads)
    return SquareSummary(len(gens), [w for w in results if w is not None])


# -- classification against exhaustive search ----------------------------------


def shape_profile_ok(hd: HeegaardDiagram, shape: Shape, x: Generator, y: Generator) -> bool:
    """Corner multiplicities: all quarters, except one half for annuli."""
    D = shape.vector(hd.num_domains)
    prof = corner_profile(hd, D, x, y)
    quarter, half = Fraction(1, 4), Fraction(1, 2)
    if shape.kind == "annulus":
        return prof.count(half) == 1 and all(v in (quarter, half) for v in prof)
    return all(v == quarter for v in prof)


@dataclass
class OracleComparison:
    x: Generator
    fast: int
    oracle: int
    equal: bool
    complete: bool
    entry_two: int
    profile_ok: bool
    stats_ok: bool
    vacuum_ok: bool
    vacuum_complete: bool
    nodes: int

    @property
    def passed(self) -> bool:
        return (
            self.equal
            and self.complete
            and self.entry_two == 0
            and self.profile_ok
            and self.stats_ok
            and self.vacuum_ok
            and self.vacuum_complete
        )

    def as_dict(self) -> dict:
        return {
            "x": list(self.x),
            "fast": self.fast,
            "oracle": self.oracle,
            "equal": self.equal,
            "complete": self.complete,
            "entry_two": self.entry_two,
            "profile_ok": self.profile_ok,
            "stats_ok": self.stats_ok,
            "vacuum_ok": self.vacuum_ok,
            "vacuum_complete": self.vacuum_complete,
        }


def expected_stats_ok(hd: HeegaardDiagram, shape: Shape, x: Generator, y: Generator) -> bool:
    """Index one, both Maslov formulas agree, and the source surface of a
    rectangle or octagon is a disk mapped without branching while an
    annulus has zero Euler characteristic."""
    st = domain_stats(hd, shape.vector(hd.num_domains), x, y)
    if st.mu != 1 or not st.formulas_agree or st.n_w != shape.n_w:
        return False
    if shape.kind == "annulus":
        return st.chiS == 0 and shape.n_w == 1
    if shape.kind == "octagon":
        return st.chiS == 1 and st.branch == 0 and shape.n_w == 1
    return st.chiS == 1 and shape.n_w == 0


def compare_with_oracle(
    cat: ShapeCatalog,
    model: BoundaryModel,
    x: Generator,
    max_coeff: int = 2,
    budget: int | None = 5_000_000,
) -> OracleComparison:
    hd = cat.hd
    fast = enumerate_differential_domains(cat, x)
    fast_set = {(y, s.vector(hd.num_domains)) for y, s in fast}
    orc = oracle_search(hd, x, max_coeff=max_coeff, mu_target=1, nw_max=1, budget=budget, model=model)
    orc_set = set(orc.results)
    vac = oracle_search(hd, x, max_coeff=max_coeff, mu_target=0, nw_max=1, budget=budget, model=model)
    zero = (tuple(x), (0,) * hd.num_domains)
    return OracleComparison(
        x=x,
        fast=len(fast_set),
        oracle=len(orc_set),
        equal=fast_set == orc_set,
        complete=orc.complete,
        entry_two=sum(not is_embedded(D) for _, D in orc.results),
        profile_ok=all(shape_profile_ok(hd, s, x, y) for y, s in fast),
        stats_ok=all(expected_stats_ok(hd, s, x, y) for y, s in fast),
        vacuum_ok=vac.results == [zero],
        vacuum_complete=vac.complete,
        nodes=orc.nodes + vac.nodes,
    )


@dataclass
class OracleSummary:
    comparisons: list[OracleComparison]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.comparisons)

    def as_dict(self) -> dict:
        cs = self.comparisons
        return {
            "checked": len(cs),
            "passed": self.passed,
            "equal": sum(c.equal for c in cs),
            "incomplete": sum(not (c.complete and c.vacuum_complete) for c in cs),
            "entry_two": sum(c.entry_two for c in cs),
            "vacuum_ok": sum(c.vacuum_ok for c in cs),
            "domains": sum(c.fast for c in cs),
            "failures": [c.as_dict() for c in cs if not c.passed][:10],
        }


def oracle_check(
    cat: ShapeCatalog,
    gens: Sequence[Generator],
    max_coeff: int = 2,
    budget: int | None = 5_000_000,
    threads: int | None = None,
) -> OracleSummary:
    model = BoundaryModel(cat.hd)
    return OracleSummary(
        parallel_map(lambda x: compare_with_oracle(cat, model, x, max_coeff, budget), list(gens), threads)
    )
