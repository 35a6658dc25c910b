from __future__ import annotations

import json
import random

import pytest

from hftwo.cover.adapted import build_adapted, merge_domains
from hftwo.cover.cocycle import build_cocycle, check_face_holonomies
from hftwo.cover.surface import ConstructionError, build_surface, lift_curves, select_curves, strip_components
from hftwo.cover.validate import check_admissibility, periodic_lattice, twist_rows, validate_properties
from hftwo.diagram import canonical_form, diagram_from_complex
from hftwo.grid import all_side_choices, extend_grid, fixture, half_turn
from hftwo.io import dumps, export_adapted, import_diagram
from hftwo.monodromy import IDENTITY, TRANSPOSITIONS, Monodromy, all_perms, marker_transpositions


def _rebuild(eg, cocycle, endcircle="upper"):
    surf = build_surface(eg, cocycle)
    lift_curves(surf)
    select_curves(surf, endcircle)
    return surf, merge_domains(surf)


def test_unknot_cover_from_direct_cocycle():
    g = fixture("UNKNOT2")
    m = Monodromy.parse("12 12")
    eg = extend_grid(g)
    cocycle = build_cocycle(eg, marker_transpositions(g, m))
    for line in range(eg.size):
        assert cocycle.line_holonomy(True, line) in (IDENTITY, TRANSPOSITIONS["12"])
    surf = build_surface(eg, cocycle)
    assert len(surf.faces) == 44
    assert sum(f.octagon for f in surf.faces) == 4
    assert surf.euler_characteristic() == -4


def test_unknot_rejected_by_transitivity():
    with pytest.raises(ConstructionError) as exc:
        build_adapted(fixture("UNKNOT2"), Monodromy.parse("12 12"))
    assert exc.value.check == "transitivity"


def test_wirtinger_failure_reported():
    with pytest.raises(ConstructionError) as exc:
        build_adapted(fixture("UNLINK4"), Monodromy.parse("12 13 12 13"))
    assert exc.value.check == "wirtinger"


def test_old_lines_trivial_holonomy(unlink):
    c = unlink.cocycle
    for line in range(0, c.size, 2):
        assert c.line_holonomy(True, line) == IDENTITY
        assert c.line_holonomy(False, line) == IDENTITY


def test_cocycle_identity_gauge_invariant(unlink):
    eg = unlink.grid
    mb = marker_transpositions(eg.base, unlink.monodromy)
    rng = random.Random(3)
    for _ in range(5):
        check_face_holonomies(unlink.cocycle.random_gauge(rng), eg, mb)


def test_unlink_summary(unlink):
    s = unlink.summary
    assert s["genus"] == 5
    assert (s["alphas"], s["betas"]) == (12, 12)
    assert s["elementary_domains"] == 88
    assert (s["rectangles"], s["octagons"]) == (80, 8)
    assert s["intersection_points"] == 96
    assert s["basepoints"] == 8


def test_lift_counts(unlink):
    N = unlink.grid.size
    for kind in "ab":
        for line in range(N):
            lifts = [lf for lf in unlink.surface.lifts if lf.kind == kind and lf.line == line]
            assert len(lifts) == (3 if line % 2 == 0 else 2)
            kept = [lf for lf in lifts if lf.kept]
            assert len(kept) == (2 if line % 2 == 0 else 1)
            if line % 2:
                assert len(kept[0].edges) == 2 * N


@pytest.mark.parametrize("kind", "ab")
def test_strip_preimages(unlink, kind):
    n = unlink.n
    for strip in range(n):
        comps = strip_components(unlink.surface, kind, strip)
        octs = sorted(sum(unlink.surface.faces[f].octagon for f in c) for c in comps)
        assert octs == [0, 2]


@pytest.mark.parametrize("fixture_name", ["unlink", "trefoil"])
@pytest.mark.parametrize("endcircle", ["upper", "lower"])
def test_validate_properties(request, fixture_name, endcircle):
    ad = request.getfixturevalue(fixture_name)
    if endcircle != ad.endcircle:
        ad = build_adapted(ad.grid.base, ad.monodromy, ad.grid.sides(), endcircle)
    rep = validate_properties(ad.diagram, ad.surface, samples=16)
    assert rep.passed, rep.as_dict()


def test_pair_counts_unlink(unlink):
    hd = unlink.diagram
    counts = {}
    for a in range(hd.num_alpha):
        for b in range(hd.num_beta):
            k = len(hd.pair_points.get((a, b), []))
            counts[k] = counts.get(k, 0) + 1
            if k == 2:
                assert not hd.alpha_old[a] and not hd.beta_old[b]
    assert counts == {0: 56, 1: 80, 2: 8}


def test_periodic_rank(unlink, trefoil):
    for ad, k in ((unlink, 8), (trefoil, 10)):
        lat = periodic_lattice(ad.diagram)
        assert len(ad.diagram.basepoint_domains) == k
        assert lat.rank - (k - 1) == 0
        rows = twist_rows(ad.diagram)
        for v in lat.basis:
            assert all(sum(r[d] * v[d] for d in range(len(v))) == 0 for r in rows)
            assert all(v[d] == 0 for d in ad.diagram.basepoint_domains)


def test_admissibility_negative_control(unlink):
    hd = unlink.diagram
    assert check_admissibility(hd).admissible
    # without basepoints the whole surface is a non-negative periodic domain
    bare = diagram_from_complex(unlink.surface, basepoint_faces=set())
    rep = check_admissibility(bare)
    assert not rep.admissible
    D = rep.counterexample
    assert min(D) >= 0 and sum(D) > 0
    rows = twist_rows(bare)
    assert all(sum(r[d] * D[d] for d in range(len(D))) == 0 for r in rows)


def test_gauge_independence(unlink):
    base = canonical_form(unlink.diagram)
    rng = random.Random(11)
    for _ in range(3):
        _, hd = _rebuild(unlink.grid, unlink.cocycle.random_gauge(rng))
        assert canonical_form(hd) == base
    eg = unlink.grid
    other = build_cocycle(eg, marker_transpositions(eg.base, unlink.monodromy), cut_from="O")
    assert canonical_form(_rebuild(eg, other)[1]) == base


def test_json_round_trip(unlink):
    text = dumps(export_adapted(unlink))
    assert text == dumps(export_adapted(unlink))
    surf, hd = import_diagram(json.loads(text))
    assert canonical_form(hd) == canonical_form(unlink.diagram)
    assert surf.euler_characteristic() == unlink.surface.euler_characteristic()


def test_json_import_rejects_tampering(unlink):
    obj = json.loads(dumps(export_adapted(unlink)))
    obj["diagram"]["basepoints"] = obj["diagram"]["basepoints"][1:]
    with pytest.raises(ValueError):
        import_diagram(obj)
    with pytest.raises(ValueError):
        import_diagram({"format": "other"})


def test_relabelling_equivariance(unlink):
    base = canonical_form(unlink.diagram)
    g = unlink.grid.base
    for by in all_perms():
        ad = build_adapted(g, unlink.monodromy.relabel(by))
        assert canonical_form(ad.diagram) == base


def test_half_turn_equivariance(unlink):
    g, sides = half_turn(unlink.grid.base, unlink.grid.sides())
    ad = build_adapted(g, unlink.monodromy.reversed_columns(), sides, "lower")
    assert canonical_form(ad.diagram) == canonical_form(unlink.diagram)


def test_endcircle_readings_agree(unlink):
    lower = build_adapted(unlink.grid.base, unlink.monodromy, unlink.grid.sides(), "lower")
    assert canonical_form(lower.diagram) == canonical_form(unlink.diagram)


def test_canonical_form_negative_controls(unlink):
    g, m = unlink.grid.base, unlink.monodromy
    forms = set()
    for i, sides in enumerate(all_side_choices(g.n)):
        if i % 6:
            continue
        forms.add(canonical_form(build_adapted(g, m, sides).diagram))
    assert len(forms) > 1
    hd = unlink.diagram
    moved = set(hd.basepoint_domains[1:]) | {next(d for d in range(hd.num_domains) if d not in hd.basepoint_domains)}
    faces = {f for d in moved for f in hd.domain_faces[d][:1]}
    other = diagram_from_complex(unlink.surface, basepoint_faces=faces)
    assert canonical_form(other) != canonical_form(hd)


def test_bad_endcircle(unlink):
    with pytest.raises(ValueError):
        build_adapted(unlink.grid.base, unlink.monodromy, None, "middle")
