from __future__ import annotations

import pytest

from hftwo.floer.checks import compare_with_oracle, oracle_check
from hftwo.floer.differential import enumerate_differential_domains
from hftwo.floer.domains import connects, domain_stats
from hftwo.floer.generators import sample_generators
from hftwo.floer.oracle import BoundaryModel, oracle_search


@pytest.fixture(scope="module")
def unlink_model(unlink):
    return BoundaryModel(unlink.diagram)


def test_oracle_agrees_on_samples(unlink_catalog, unlink_model):
    for x in sample_generators(unlink_catalog.hd, 2, 21):
        c = compare_with_oracle(unlink_catalog, unlink_model, x)
        assert c.passed, c.as_dict()
        assert c.fast == c.oracle > 0


def test_oracle_results_are_index_one_domains(unlink, unlink_model):
    hd = unlink.diagram
    x = sample_generators(hd, 1, 5)[0]
    res = oracle_search(hd, x, model=unlink_model)
    assert res.complete and res.results
    for y, D in res.results:
        assert min(D) >= 0 and max(D) <= 2
        assert connects(hd, D, x, y)
        st = domain_stats(hd, D, x, y)
        assert st.mu == 1 and st.n_w <= 1


def test_vacuum(unlink, unlink_model):
    hd = unlink.diagram
    x = sample_generators(hd, 1, 6)[0]
    res = oracle_search(hd, x, mu_target=0, model=unlink_model)
    assert res.complete
    assert res.results == [(x, (0,) * hd.num_domains)]


def test_basepoint_free_search_finds_only_rectangles(unlink_catalog, unlink_model):
    hd = unlink_catalog.hd
    x = sample_generators(hd, 1, 8)[0]
    res = oracle_search(hd, x, nw_max=0, model=unlink_model)
    fast = {
        (y, s.vector(hd.num_domains))
        for y, s in enumerate_differential_domains(unlink_catalog, x)
        if s.kind == "rectangle"
    }
    assert res.complete
    assert set(res.results) == fast


def test_budget_marks_incomplete(unlink, unlink_model):
    hd = unlink.diagram
    x = sample_generators(hd, 1, 5)[0]
    res = oracle_search(hd, x, budget=50, model=unlink_model)
    assert not res.complete and res.status == "incomplete"


def test_oracle_catches_missing_shapes(unlink_catalog, unlink_model):
    from hftwo.floer.differential import ShapeCatalog

    hd = unlink_catalog.hd
    cat = ShapeCatalog(hd)
    for s in unlink_catalog.shapes:
        if s.kind != "annulus":
            cat.by_xc.setdefault(s.xc, []).append(len(cat.shapes))
            cat.shapes.append(s)
    summary = oracle_check(cat, sample_generators(hd, 1, 21))
    assert not summary.passed
    assert summary.as_dict()["equal"] == 0
