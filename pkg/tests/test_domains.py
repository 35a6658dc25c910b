from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from hftwo.floer.differential import enumerate_differential_domains
from hftwo.floer.domains import add, connects, domain_stats, endpoint, twist, zero_domain
from hftwo.floer.generators import sample_generators
from hftwo.floer.random_domains import complement_components, random_domains

# (e, p, mu, d, chi(S), branch) per shape kind, worked by hand: a rectangle
# has four quarter corners, an octagon eight, and an annulus four quarter
# corners plus a kept coordinate of multiplicity one half.
EXPECTED = {
    "rectangle": (0, 1, 1, 2, 1, 0),
    "octagon": (-1, 2, 1, 4, 1, 0),
    "annulus": (-1, 2, 1, 3, 0, Fraction(1, 2)),
}


def _first_of_each_kind(cat, seed=1):
    hd = cat.hd
    found = {}
    for x in sample_generators(hd, 50, seed):
        for y, s in enumerate_differential_domains(cat, x):
            found.setdefault(s.kind, (x, y, s.vector(hd.num_domains)))
    return found


@pytest.mark.parametrize("kind", sorted(EXPECTED))
def test_shape_measures(unlink_catalog, kind):
    hd = unlink_catalog.hd
    x, y, D = _first_of_each_kind(unlink_catalog)[kind]
    s = domain_stats(hd, D, x, y)
    assert (s.e, s.p, s.mu, s.d, s.chiS, s.branch) == EXPECTED[kind]
    assert s.formulas_agree
    assert s.n_w == (0 if kind == "rectangle" else 1)


def test_zero_domain(unlink):
    hd = unlink.diagram
    x = sample_generators(hd, 1, 0)[0]
    Z = zero_domain(hd)
    assert endpoint(hd, Z, x) == x
    s = domain_stats(hd, Z, x, x)
    assert s.mu == 0 and s.formulas_agree


def test_complement_components_are_periodic_pieces(unlink):
    hd = unlink.diagram
    for kind in "ab":
        comps = complement_components(hd, kind)
        assert sum(map(sum, comps)) == hd.num_domains
        for C in comps:
            assert not any(twist(hd, C))


def _check(hd, sample):
    D, x, y = sample.domain, sample.x, sample.y
    assert connects(hd, D, x, y)
    assert endpoint(hd, D, x) == y
    s = domain_stats(hd, D, x, y)
    assert s.formulas_agree, sample
    assert s.chiS.denominator == 1
    assert (2 * s.branch).denominator == 1


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.integers(0, 10**6))
def test_random_domains_unlink(unlink_catalog, seed):
    hd = unlink_catalog.hd
    for sample in random_domains(unlink_catalog, 12, seed):
        _check(hd, sample)


@settings(max_examples=10, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.integers(0, 10**6))
def test_random_domains_trefoil(trefoil_catalog, seed):
    hd = trefoil_catalog.hd
    for sample in random_domains(trefoil_catalog, 12, seed):
        _check(hd, sample)


def test_composites_are_not_shapes(unlink_catalog):
    hd = unlink_catalog.hd
    x = sample_generators(hd, 1, 4)[0]
    (y, s1), *_ = enumerate_differential_domains(unlink_catalog, x)
    (z, s2), *_ = enumerate_differential_domains(unlink_catalog, y)
    D = add(s1.vector(hd.num_domains), s2.vector(hd.num_domains))
    assert domain_stats(hd, D, x, z).mu == 2
