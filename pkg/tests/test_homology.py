from __future__ import annotations

import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hftwo.floer.complex import ChainComplexU2, build_complex
from hftwo.floer.homology import HomologyCounts, divide_basepoint_factor, homology, homology_counts


def _brute_force(cx: ChainComplexU2) -> tuple[int, int]:
    """(rank H, rank U on H) by listing every chain, for tiny complexes."""
    G = cx.size

    def d(v):
        out = 0
        for i in range(G):
            for u in (0, 1):
                if v >> (i + G * u) & 1:
                    for j, w in cx.edges[i]:
                        if u + w < 2:
                            out ^= 1 << (j + G * (u + w))
        return out

    def U(v):
        return (v & ((1 << G) - 1)) << G

    chains = range(1 << (2 * G))
    ker = [v for v in chains if d(v) == 0]
    im = {d(v) for v in chains}
    u_ker = {a ^ b for a in {U(z) for z in ker} for b in im}
    log = lambda n: n.bit_length() - 1  # noqa: E731
    return log(len(ker)) - log(len(im)), log(len(u_ker)) - log(len(im))


def test_standard_pieces():
    assert homology_counts(ChainComplexU2.from_terms(3, [])) == HomologyCounts(6, 3, 0)
    assert homology_counts(ChainComplexU2.from_terms(2, [(0, 1, 1)])) == HomologyCounts(2, 0, 2)
    assert homology_counts(ChainComplexU2.from_terms(2, [(0, 1, 0)])) == HomologyCounts(0, 0, 0)


def test_repeated_terms_cancel():
    cx = ChainComplexU2.from_terms(2, [(0, 1, 0), (0, 1, 0)])
    assert cx.edges == [[], []]
    with pytest.raises(ValueError):
        ChainComplexU2.from_terms(2, [(0, 1, 2)])


terms = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 1)), max_size=5)


@given(st.integers(1, 4), terms)
def test_counts_match_brute_force(size, ts):
    ts = [t for t in ts if t[0] < size and t[1] < size]
    cx = ChainComplexU2.from_terms(size, ts)
    assume(cx.verify_d_squared() is None)
    h = homology_counts(cx)
    assert (h.rank, h.free) == _brute_force(cx)
    assert h.rank == 2 * h.free + h.f2


def _copies(cx: ChainComplexU2, m: int) -> ChainComplexU2:
    G = cx.size
    ts = [(i + c * G, j + c * G, u) for c in range(m) for i in range(G) for j, u in cx.edges[i]]
    return ChainComplexU2.from_terms(G * m, ts)


@given(st.integers(1, 3), terms, st.integers(1, 3))
def test_basepoint_factor_divides_out(size, ts, k):
    ts = [t for t in ts if t[0] < size and t[1] < size]
    cx = ChainComplexU2.from_terms(size, ts)
    assume(cx.verify_d_squared() is None)
    big = homology_counts(_copies(cx, 2 ** (k - 1)))
    red = divide_basepoint_factor(big, k)
    assert red.divisible
    assert HomologyCounts(red.rank, red.free, red.f2) == homology_counts(cx)


def test_reduction_inapplicable():
    red = divide_basepoint_factor(HomologyCounts(2, 0, 2), 3)
    assert not red.divisible
    assert red.as_dict()["status"] == "reduction inapplicable"
    with pytest.raises(ValueError):
        divide_basepoint_factor(HomologyCounts(2, 0, 2), 0)


def test_sectors_add_up():
    cx = ChainComplexU2.from_terms(4, [(0, 1, 1), (2, 3, 0)])
    cx.sectors = ["a", "a", "b", "b"]
    rep = homology(cx, k=1)
    assert [s.as_dict() for s in rep.sectors] == [{"rank": 2, "free": 0, "f2": 2}, {"rank": 0, "free": 0, "f2": 0}]
    assert rep.total == HomologyCounts(2, 0, 2)
    assert rep.reduced.rank == 2


def test_build_complex_requires_closed_set(unlink_catalog):
    from hftwo.floer.generators import sample_generators

    x = sample_generators(unlink_catalog.hd, 1, 0)[0]
    with pytest.raises(ValueError, match="leaves"):
        build_complex(unlink_catalog, [x])
