from __future__ import annotations

from hftwo.floer.complex import boundary, verify_d_squared_at
from hftwo.floer.differential import ShapeCatalog, enumerate_differential_domains
from hftwo.floer.domains import connects, domain_stats, twist
from hftwo.floer.generators import is_generator, sample_generators
from hftwo.floer.checks import expected_stats_ok, shape_profile_ok


def test_unlink_catalog_counts(unlink_catalog):
    assert unlink_catalog.counts() == {"rectangle": 650, "annulus": 1056, "octagon": 10342}


def test_trefoil_catalog_counts(trefoil_catalog):
    assert trefoil_catalog.counts() == {"rectangle": 895, "annulus": 1680, "octagon": 46140}


def test_catalog_shapes(unlink_catalog):
    hd = unlink_catalog.hd
    bp = set(hd.basepoint_domains)
    for s in unlink_catalog.shapes:
        D = s.vector(hd.num_domains)
        assert sum(D[d] for d in bp) == s.n_w
        corners = 2 if s.kind in ("rectangle", "annulus") else 4
        assert len(s.xc) == len(s.yc) == corners
        t = twist(hd, D)
        assert sorted(p for p, v in enumerate(t) if v == 1) == list(s.xc)
        assert sorted(p for p, v in enumerate(t) if v == -1) == list(s.yc)
        assert sum(map(abs, t)) == 2 * corners


def test_differential_domains(unlink_catalog):
    hd = unlink_catalog.hd
    for x in sample_generators(hd, 20, 7):
        out = enumerate_differential_domains(unlink_catalog, x)
        assert out == sorted(out, key=lambda ys: (ys[0], ys[1].support))
        for y, s in out:
            assert is_generator(hd, y) and y != x
            D = s.vector(hd.num_domains)
            assert connects(hd, D, x, y)
            assert domain_stats(hd, D, x, y).mu == 1
            assert shape_profile_ok(hd, s, x, y)
            assert expected_stats_ok(hd, s, x, y)


def test_d_squared_samples(unlink_catalog, trefoil_catalog):
    for cat in (unlink_catalog, trefoil_catalog):
        for x in sample_generators(cat.hd, 10, 3):
            assert verify_d_squared_at(cat, x) is None


def _without(cat, kind):
    out = ShapeCatalog(cat.hd)
    for s in cat.shapes:
        if s.kind != kind:
            out.by_xc.setdefault(s.xc, []).append(len(out.shapes))
            out.shapes.append(s)
    return out


def test_d_squared_needs_every_shape_kind(unlink_catalog):
    gens = sample_generators(unlink_catalog.hd, 5, 0)
    for kind in ("annulus", "octagon"):
        cat = _without(unlink_catalog, kind)
        witnesses = [verify_d_squared_at(cat, x) for x in gens]
        assert all(w is not None for w in witnesses)
        assert all(w.coefficient != 0 for w in witnesses)


def test_boundary_coefficients(unlink_catalog):
    hd = unlink_catalog.hd
    x = sample_generators(hd, 1, 9)[0]
    d = boundary(unlink_catalog, x)
    assert all(c in (1, 2, 3) for c in d.values())
