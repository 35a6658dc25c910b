from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hftwo.grid import fixture
from hftwo.monodromy import (
    TRANSPOSITIONS,
    Monodromy,
    MonodromyError,
    all_perms,
    enumerate_monodromies,
    marker_transpositions,
    validate_transitive,
    validate_wirtinger,
)

T12, T13, T23 = TRANSPOSITIONS["12"], TRANSPOSITIONS["13"], TRANSPOSITIONS["23"]


def test_parse_and_format():
    m = Monodromy.parse("12 12 13 13")
    assert m.sigma == (T12, T12, T13, T13)
    assert m.format() == "12 12 13 13"
    assert Monodromy.parse("(12),(21),(31),(23)").format() == "12 12 13 23"


def test_parse_rejects_non_transposition():
    with pytest.raises(MonodromyError):
        Monodromy.parse("12 11")


def test_marker_transpositions_follow_columns():
    g = fixture("UNLINK4")
    mb = marker_transpositions(g, Monodromy.parse("12 12 13 13"))
    for (kind, r, c), tau in zip(g.markers(), mb.tau):
        assert tau == (T12 if c < 2 else T13)
    mb = marker_transpositions(fixture("UNKNOT2"), Monodromy.parse("12 12"))
    assert set(mb.tau) == {T12}
    mb = marker_transpositions(fixture("TREFOIL5"), Monodromy.parse("23 23 23 23 23"))
    assert set(mb.tau) == {T23}


def test_wirtinger_examples():
    assert validate_wirtinger(fixture("UNLINK4"), Monodromy.parse("12 12 13 13")) is None
    assert validate_wirtinger(fixture("UNKNOT2"), Monodromy.parse("12 12")) is None
    fail = validate_wirtinger(fixture("UNLINK4"), Monodromy.parse("12 13 13 13"))
    assert fail is not None and fail.row == 0


def test_transitivity():
    assert validate_transitive(Monodromy.parse("12 12 13 13")) is None
    assert validate_transitive(Monodromy.parse("12 12")) == [frozenset({0, 1}), frozenset({2})]
    assert sorted(map(sorted, validate_transitive(Monodromy.parse("23 23 23")))) == [[0], [1, 2]]


def _brute_force(g):
    out = []
    for sigma in itertools.product([T12, T13, T23], repeat=g.n):
        m = Monodromy(sigma)
        if validate_wirtinger(g, m) is None and validate_transitive(m) is None:
            out.append(m)
    return sorted(out, key=lambda m: m.format())


@pytest.mark.parametrize("name", ["UNKNOT2", "UNLINK4", "TREFOIL5"])
def test_enumeration_matches_exhaustive_filter(name):
    g = fixture(name)
    found = enumerate_monodromies(g)
    assert [m.format() for m in found] == [m.format() for m in _brute_force(g)]
    assert len({m.format() for m in found}) == len(found)


def test_enumeration_counts():
    assert enumerate_monodromies(fixture("UNKNOT2")) == []
    unlink = enumerate_monodromies(fixture("UNLINK4"))
    assert len(unlink) == 6
    for m in unlink:
        s = m.sigma
        assert s[0] == s[1] and s[2] == s[3] and s[0] != s[2]
    assert enumerate_monodromies(fixture("TREFOIL5"))


@given(st.sampled_from(["UNLINK4", "TREFOIL5"]), st.lists(st.sampled_from(["12", "13", "23"]), min_size=5, max_size=5), st.sampled_from(all_perms()))
def test_wirtinger_verdict_invariant_under_relabelling(name, labels, by):
    g = fixture(name)
    m = Monodromy.parse(" ".join(labels[: g.n]))
    assert (validate_wirtinger(g, m) is None) == (validate_wirtinger(g, m.relabel(by)) is None)
    assert (validate_transitive(m) is None) == (validate_transitive(m.relabel(by)) is None)


def test_crossing_free_consistency_is_constancy_on_components():
    g = fixture("UNLINK4")
    for sigma in itertools.product(["12", "13", "23"], repeat=4):
        m = Monodromy.parse(" ".join(sigma))
        constant = sigma[0] == sigma[1] and sigma[2] == sigma[3]
        assert (validate_wirtinger(g, m) is None) == constant
