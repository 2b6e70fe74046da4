"""Stabilization: forgetting region genera and gluing boundary cycles apart.

The stable class of a graph is computed by a local rewrite of its dual graph.
Every complementary region is replaced by one disc per boundary cycle, which
turns the graph quasi-filling; arcs that become parallel are then merged.
The two generators of the stabilization system, ``G`` (one arc on a torus)
and ``H_b`` (two arcs on a cylinder bounding a single annular region), raise
the genus by one and are absorbed by this rewrite.
"""

from __future__ import annotations

from fractions import Fraction

from ._draft import Draft
from .arcgraph import ArcGraph, GapGraph, WeightedArcGraph, graph_from_partner
from .glue import _mod1, compose, surface, twist, untwist_at_zero  # noqa: F401

#: genus-defect generator: a single arc on a one-holed torus with two boundaries
G_GRAPH = ArcGraph((((1, 0),), ((0, 0),)), ((0,), (0,)), (1,))
#: boundary-defect generator: both arcs of the cylinder bound one annular region
H_GRAPH = ArcGraph((((1, 1), (1, 0)), ((0, 1), (0, 0))), ((0, 0), (0, 0)), (0,))


def G() -> WeightedArcGraph:
    return WeightedArcGraph(G_GRAPH, (Fraction(1),))


def H(b) -> WeightedArcGraph:
    b = Fraction(b)
    if not 0 < b < 1:
        raise ValueError("H_b needs 0 < b < 1")
    return WeightedArcGraph(H_GRAPH, (b, 1 - b))


def st_graph(graph: ArcGraph) -> ArcGraph:
    """Weight-free stabilization of a combinatorial type."""
    if graph.is_empty:
        return ArcGraph.empty(0)
    d = Draft.from_graph(graph_from_partner(graph.partner))
    d.consolidate()
    return d.finish()[0]


def st(alpha) -> WeightedArcGraph:
    """Quasi-filling, projectively normalized representative of the stable class."""
    graph = alpha.graph
    if graph.is_empty:
        return surface(0)
    d = Draft.from_graph(graph_from_partner(graph.partner), alpha.weights)
    d.consolidate()
    g, w, _, _ = d.finish()
    return WeightedArcGraph(g, w).normalized()


def _check_a(a):
    a = Fraction(a)
    if not 0 <= a < 1:
        raise ValueError("twist parameter must lie in [0, 1)")
    return a


def st_G(a, alpha: WeightedArcGraph) -> WeightedArcGraph:
    """``T_{-a} o G o T_a o alpha``: one more handle, two less Euler defect."""
    a = _check_a(a)
    inner = compose(twist(a), 1, alpha)
    return compose(twist(_mod1(-a)), 1, compose(G(), 1, inner))


def st_H(a, b, alpha: WeightedArcGraph) -> WeightedArcGraph:
    a = _check_a(a)
    inner = compose(twist(a), 1, alpha)
    return compose(twist(_mod1(-a)), 1, compose(H(b), 1, inner))


def stable_equal(alpha, beta) -> bool:
    return st(alpha) == st(beta)


def decompose_unstable(alpha: WeightedArcGraph):
    """``(genus defect, boundary defect, stable representative)``."""
    g = alpha.graph
    k = sum(g.region_genus)
    l = sum(b - 1 for b in g.region_orbit_count) if not g.is_empty else 0
    return k, l, st(alpha)
