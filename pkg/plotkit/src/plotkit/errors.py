from __future__ import annotations


class PlotError(ValueError):
    """A figure request that cannot be satisfied from the given traces."""
