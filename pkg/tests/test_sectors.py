from __future__ import annotations

import pytest

from hftwo.floer.complex import boundary
from hftwo.floer.domains import connects
from hftwo.floer.generators import sample_generators
from hftwo.floer.sectors import SectorMap, connecting_domain, partition_sectors, sector_of


@pytest.fixture(scope="module")
def unlink_sectors(unlink):
    return SectorMap(unlink.diagram)


def test_lattice_rank(unlink_sectors):
    assert unlink_sectors.lattice.rank == 73


def test_differential_stays_in_sector(unlink_catalog, unlink_sectors):
    for x in sample_generators(unlink_catalog.hd, 5, 1):
        for y in boundary(unlink_catalog, x):
            assert sector_of(unlink_sectors, y) == sector_of(unlink_sectors, x)


def test_connecting_domains(unlink, unlink_sectors):
    hd = unlink.diagram
    gens = sample_generators(hd, 6, 2)
    assert len(partition_sectors(unlink_sectors, gens)) == 1
    for x, y in zip(gens, gens[1:]):
        D = connecting_domain(unlink_sectors, x, y)
        assert D is not None and connects(hd, D, x, y)


def test_unconnected_points_get_distinct_sectors():
    # one domain whose twist vanishes at both points
    class Tiny:
        num_points = 2
        num_domains = 1
        quad = [(0, 0, 0, 0), (0, 0, 0, 0)]

    sm = SectorMap(Tiny())
    assert sm.lattice.rank == 0
    assert sm.label((0,)) != sm.label((1,))
    assert sm.connecting_domain((0,), (1,)) is None
    assert sm.connecting_domain((0,), (0,)) == (0,)
