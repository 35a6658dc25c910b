"""Combinatorial U^2-truncated Heegaard Floer complexes of simple 3-fold
branched covers over grid-presented links."""

__version__ = "0.1.0"
