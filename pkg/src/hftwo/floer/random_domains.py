"""Random non-negative domains for cross-checking the index formulas.

Domains are grown from a generator by composing differential shapes along
a random walk and adding whole components of the complement of the alpha
or beta curves, which have zero twist and so keep the endpoints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from ..diagram import NE, NW, SE, SW, HeegaardDiagram
from .differential import ShapeCatalog, enumerate_differential_domains
from .domains import DomainVector, add
from .generators import Generator, random_generator


def complement_components(hd: HeegaardDiagram, kind: str) -> list[DomainVector]:
    """Indicator chains of the components of the surface cut along the
    alpha (``"a"``) or beta (``"b"``) curves."""
    parent = list(range(hd.num_domains))

    def find(d: int) -> int:
        while parent[d] != d:
            parent[d] = parent[parent[d]]
            d = parent[d]
        return d

    # cutting along alphas keeps beta arcs, which separate west from east
    pairs = ((NW, NE), (SW, SE)) if kind == "a" else ((NE, SE), (NW, SW))
    for q in hd.quad:
        for i, j in pairs:
            a, b = find(q[i]), find(q[j])
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = {}
    for d in range(hd.num_domains):
        comps.setdefault(find(d), []).append(d)
    out = []
    for members in sorted(comps.values()):
        v = [0] * hd.num_domains
        for d in members:
            v[d] = 1
        out.append(tuple(v))
    return out


@dataclass(frozen=True)
class SampledDomain:
    x: Generator
    y: Generator
    domain: DomainVector
    steps: int
    pieces: int


def random_domains(
    cat: ShapeCatalog, count: int, seed: int, walk: int = 6, extras: int = 2
) -> Iterator[SampledDomain]:
    """``count`` domains from random walks of up to ``walk`` differential
    steps; every step also yields ``extras`` variants with complement
    components added."""
    hd = cat.hd
    rng = random.Random(seed)
    pieces = complement_components(hd, "a") + complement_components(hd, "b")
    made = 0
    while made < count:
        x = random_generator(hd, rng)
        y = x
        D = (0,) * hd.num_domains
        for step in range(1, walk + 1):
            options = enumerate_differential_domains(cat, y)
            if not options:
                break
            y, shape = rng.choice(options)
            D = add(D, shape.vector(hd.num_domains))
            yield SampledDomain(x, y, D, step, 0)
            made += 1
            for _ in range(extras):
                if made >= count:
                    return
                k = rng.randint(1, 3)
                E = D
                for piece in rng.sample(pieces, k):
                    E = add(E, piece)
                yield SampledDomain(x, y, E, step, k)
                made += 1
            if made >= count:
                return
