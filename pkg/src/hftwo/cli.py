"""Command line front end.

Exit codes: 0 success, 2 invalid input, 3 a mathematical check failed.
The JSON report goes to ``--out`` (with a short summary on stdout) or, when
``--out`` is absent, to stdout.  Output is deterministic for fixed inputs
and seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .cover.adapted import AdaptedDiagram, build_adapted
from .cover.surface import ConstructionError
from .cover.validate import check_admissibility, periodic_lattice, validate_properties
from .diagram import DiagramError, HeegaardDiagram
from .floer.checks import dsq_sample, oracle_check
from .floer.complex import ChainComplexU2, build_complex
from .floer.differential import build_catalog
from .floer.generators import count_generators, enumerate_generators, sample_generators
from .floer.homology import homology, skipped_report
from .floer.sectors import SectorMap
from .grid import FIXTURES, GridError, GridSpec, all_side_choices, load_grid, parse_grid_text
from .io import dumps, export_adapted, import_diagram
from .monodromy import Monodromy, MonodromyError, enumerate_monodromies

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 2, 3

# what each named check asserts, for failure reports
STATEMENTS = {
    "transitivity": "the cover must be connected: the sheet permutations act transitively",
    "wirtinger": "labels must be consistent at every crossing",
    "cocycle": "face holonomies must match the branching data",
    "elementary domains": "every elementary domain is a rectangle or a one-basepoint octagon",
    "1 elementary domains": "every elementary domain is a rectangle or a one-basepoint octagon",
    "2 pants decompositions": "alpha curves and beta curves each cut the surface into pairs of pants, one octagon each",
    "3 alpha-beta intersections": "an alpha and a beta curve meet at most twice, twice only when both are new and with equal signs",
    "4 generator projections": "a generator projects to one point on each new and two on each old grid curve",
    "5 intersection fibres": "over every grid intersection lie one or two diagram intersections",
    "6 admissibility": "every nontrivial periodic domain has both positive and negative multiplicities",
    "d squared": "the differential squares to zero",
    "oracle": "the index one differential consists of embedded rectangles, annuli and octagons",
}


class InputError(Exception):
    pass


class CheckFailure(Exception):
    def __init__(self, check: str, detail: str, report: dict | None = None):
        super().__init__(f"{check}: {detail}")
        self.check = check
        self.detail = detail
        self.report = report or {}


# -- input -------------------------------------------------------------------------


def _read_grid(source: str) -> tuple[GridSpec, str | None, str | None]:
    if source.upper() in FIXTURES:
        return parse_grid_text(FIXTURES[source.upper()])
    path = Path(source)
    if not path.exists():
        raise InputError(f"no such grid file or fixture: {source}")
    return load_grid(path)


def _monodromy(g: GridSpec, arg: str | None, from_file: str | None) -> Monodromy:
    text = arg if arg is not None else from_file
    if text is None or text == "search":
        found = enumerate_monodromies(g)
        if not found:
            raise CheckFailure("transitivity", "no connected cover is consistent with this grid")
        return found[0]
    m = Monodromy.parse(text)
    if len(m.sigma) != g.n:
        raise InputError(f"sigma has {len(m.sigma)} entries, grid has {g.n} columns")
    return m


def _side_list(g: GridSpec, arg: str | None, from_file: str | None, samples: int, seed: int) -> list[str | None]:
    text = arg if arg is not None else from_file
    if text != "all-sampled":
        return [text]
    choices = list(all_side_choices(g.n))
    if len(choices) <= samples:
        return choices
    return sorted(random.Random(seed).sample(choices, samples))


def _build(args, sides: str | None = None) -> AdaptedDiagram:
    g, file_sides, file_sigma = _read_grid(args.input)
    m = _monodromy(g, args.sigma, file_sigma)
    try:
        return build_adapted(g, m, sides if sides is not None else (args.sides or file_sides), args.endcircle)
    except ConstructionError as exc:
        raise CheckFailure(exc.check, exc.detail) from None


def _load_any(args) -> tuple[HeegaardDiagram, dict]:
    """A diagram from a grid (file or fixture) or an exported JSON file."""
    path = Path(args.input)
    if path.suffix == ".json" and path.exists():
        try:
            obj = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: {exc}") from None
        try:
            _, hd = import_diagram(obj)
        except (KeyError, TypeError) as exc:
            raise InputError(f"{path}: malformed diagram document ({exc})") from None
        except ConstructionError as exc:
            raise CheckFailure(exc.check, exc.detail) from None
        return hd, {"source": str(path)}
    ad = _build(args)
    return ad.diagram, {"source": args.input, "sigma": ad.monodromy.format(), "sides": ad.grid.sides()}


# -- commands ------------------------------------------------------------------------


def cmd_validate(args) -> dict:
    g, file_sides, file_sigma = _read_grid(args.input)
    m = _monodromy(g, args.sigma, file_sigma)
    runs = []
    failed = None
    for sides in _side_list(g, args.sides, file_sides, args.samples, args.seed):
        try:
            ad = build_adapted(g, m, sides, args.endcircle)
        except ConstructionError as exc:
            raise CheckFailure(exc.check, exc.detail) from None
        rep = validate_properties(ad.diagram, ad.surface, samples=args.samples, seed=args.seed)
        d = rep.as_dict()
        d["sides"] = ad.grid.sides()
        runs.append(d)
        if failed is None:
            failed = next((i for i in d["items"] if i["status"] != "pass"), None)
    report = {
        "command": "validate",
        "passed": failed is None,
        "checked": len(runs),
        "sigma": m.format(),
        "endcircle": args.endcircle,
        "runs": runs,
    }
    if failed is not None:
        raise CheckFailure(failed["item"], json.dumps(failed["witnesses"][:1]), report)
    return report


def cmd_build(args) -> dict:
    ad = _build(args)
    if args.command == "export":
        return export_adapted(ad)
    out = export_adapted(ad)
    return {"command": "build", "summary": ad.summary, "diagram": out}


def cmd_stats(args) -> dict:
    hd, meta = _load_any(args)
    gens = sample_generators(hd, args.samples, args.seed)
    sm = SectorMap(hd)
    lattice = periodic_lattice(hd)
    adm = check_admissibility(hd, lattice)
    kinds = [hd.domain_kind(d) for d in range(hd.num_domains)]
    k = len(hd.basepoint_domains)
    return {
        "command": "stats",
        **meta,
        "alphas": hd.num_alpha,
        "betas": hd.num_beta,
        "basepoints": k,
        "elementary_domains": hd.num_domains,
        "rectangles": kinds.count("rectangle"),
        "octagons": kinds.count("octagon"),
        "intersection_points": hd.num_points,
        "generators": count_generators(hd),
        "sampled_generators": len(gens),
        "sectors_seen": len({sm.label(x) for x in gens}),
        "periodic_rank": lattice.rank,
        "first_betti": lattice.rank - (k - 1),
        "admissible": adm.admissible,
    }


def cmd_dsq_sample(args) -> dict:
    hd, meta = _load_any(args)
    cat = build_catalog(hd)
    gens = sample_generators(hd, args.samples, args.seed)
    summary = dsq_sample(cat, gens)
    report = {"command": "dsq-sample", **meta, "seed": args.seed, **summary.as_dict()}
    if not summary.passed:
        raise CheckFailure("d squared", json.dumps(report["witnesses"][:1]), report)
    return report


def cmd_oracle_check(args) -> dict:
    hd, meta = _load_any(args)
    cat = build_catalog(hd)
    gens = sample_generators(hd, args.samples, args.seed)
    summary = oracle_check(cat, gens, max_coeff=args.max_coeff, budget=args.budget)
    report = {
        "command": "oracle-check",
        **meta,
        "seed": args.seed,
        "max_coeff": args.max_coeff,
        **summary.as_dict(),
    }
    if not summary.passed:
        raise CheckFailure("oracle", json.dumps(report["failures"][:1]), report)
    return report


def _complex_from_json(obj: dict) -> tuple[ChainComplexU2, int | None]:
    try:
        cx = ChainComplexU2.from_terms(int(obj["size"]), [tuple(t) for t in obj["terms"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed complex document ({exc})") from None
    return cx, obj.get("k")


def cmd_homology(args) -> dict:
    path = Path(args.input)
    if path.suffix == ".json" and path.exists():
        try:
            obj = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: {exc}") from None
        if obj.get("format") == "hftwo-complex":
            cx, k = _complex_from_json(obj)
            bad = cx.verify_d_squared()
            if bad is not None:
                raise CheckFailure("d squared", json.dumps(bad.as_dict()))
            return {"command": "homology", "source": str(path), **homology(cx, k).as_dict()}
    hd, meta = _load_any(args)
    total = count_generators(hd)
    if total > args.budget:
        return {"command": "homology", **meta, **skipped_report(total, args.budget)}
    gens = list(enumerate_generators(hd))
    sm = SectorMap(hd)
    labels = [sm.label(x) for x in gens]
    order = {lab: i for i, lab in enumerate(dict.fromkeys(labels))}
    cx = build_complex(build_catalog(hd), gens, [order[lab] for lab in labels])
    bad = cx.verify_d_squared()
    if bad is not None:
        raise CheckFailure("d squared", json.dumps(bad.as_dict()))
    rep = homology(cx, len(hd.basepoint_domains))
    return {"command": "homology", **meta, "generators": total, **rep.as_dict()}


def cmd_monodromy_search(args) -> dict:
    g, _, _ = _read_grid(args.input)
    found = enumerate_monodromies(g)
    return {"command": "monodromy-search", "n": g.n, "count": len(found), "monodromies": [m.format() for m in found]}


COMMANDS = {
    "validate": cmd_validate,
    "build": cmd_build,
    "export": cmd_build,
    "stats": cmd_stats,
    "dsq-sample": cmd_dsq_sample,
    "oracle-check": cmd_oracle_check,
    "homology": cmd_homology,
    "monodromy-search": cmd_monodromy_search,
}

DEFAULT_SAMPLES = {"dsq-sample": 1000, "oracle-check": 200, "validate": 32}
DEFAULT_BUDGET = {"oracle-check": 5_000_000, "homology": 20_000}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hftwo", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("input", help="grid file, fixture name (UNLINK4, ...) or exported JSON")
        s.add_argument("--sigma", help='column transpositions, e.g. "12 12 13 13", or "search"')
        s.add_argument("--sides", help='side letters (n of D/U then n of L/R) or "all-sampled"')
        s.add_argument("--endcircle", choices=["upper", "lower"], default="upper")
        s.add_argument("--samples", type=int, default=DEFAULT_SAMPLES.get(name, 64))
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--max-coeff", type=int, default=2)
        s.add_argument("--budget", type=int, default=DEFAULT_BUDGET.get(name, 5_000_000))
        s.add_argument("--out", help="write the JSON report here")
    return p


def _summary(report: dict) -> str:
    keys = ("command", "passed", "checked", "count", "status", "generators", "genus")
    parts = [f"{k}={report[k]}" for k in keys if k in report]
    if "summary" in report:
        parts += [f"{k}={v}" for k, v in report["summary"].items()]
    return " ".join(parts)


def _emit(report: dict, out: str | None) -> None:
    text = dumps(report)
    if out:
        Path(out).write_text(text)
        print(_summary(report))
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.samples < 1:
        print("error: --samples must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = COMMANDS[args.command](args)
    except (InputError, GridError, MonodromyError, DiagramError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CheckFailure as exc:
        report = {
            "command": args.command,
            "passed": False,
            "check": exc.check,
            "statement": STATEMENTS.get(exc.check, ""),
            "detail": exc.detail,
            **{k: v for k, v in exc.report.items() if k not in ("command", "passed")},
        }
        _emit(report, args.out)
        print(f"check failed: {exc.check}: {STATEMENTS.get(exc.check, exc.detail)}", file=sys.stderr)
        return EXIT_CHECK
    _emit(report, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
