"""Operadic gluing of weighted arc graphs.

Gluing ``A`` at boundary ``i`` to ``B`` at boundary 0 follows the foliation
picture.  Both windows are scaled to a common length ``L``: ``A`` by the total
width of ``B`` at 0 and ``B`` by the weight of ``A`` at ``i``.  Window ``i`` of
``A`` at coordinate ``x`` is then identified with window 0 of ``B`` at
``L - x``, marked point to marked point.  Everything below is written in the
coordinate ``y`` of ``B``.

The overlay of the two band decompositions cuts every band into pieces.  A
piece joining an ``A`` band to a ``B`` band becomes an arc of the result; a
piece over a gap of ``B`` is erased and its width shows up as a gap at
boundary 0 of ``A``.  Complementary regions are glued where a cut point of
``A`` meets a boundary stretch of ``B``; each such contact is along a
contractible set and lowers the Euler characteristic by one.
"""

from __future__ import annotations

from fractions import Fraction

from ._draft import Draft
from .arcgraph import (
    ArcGraph,
    GapGraph,
    WeightedArcGraph,
    is_cgtree,
    is_gtree,
    is_twisted_at,
)
from .errors import GlueError, InvalidGraphError

ZERO = Fraction(0)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx
        return rx


def _require_gtree(g: ArcGraph, name):
    if not is_gtree(g):
        raise InvalidGraphError(f"{name} is not in GTree: some arc misses boundary 0 or has both ends there")


def _b_layout(B: GapGraph, scale):
    """Bands and stretches of window 0 of ``B`` as ``y`` intervals."""
    g = B.graph
    items = []
    y = B.gap_star * scale
    if g.is_empty:
        return [("stretch", 0, ZERO, y)], y
    marked = g.corner_region[0][-1]
    items.append(("stretch", marked, ZERO, y))
    for s in range(g.window_size(0)):
        w = B.weights[g.arc_at(0, s)] * scale
        items.append(("band", s, y, y + w))
        y += w
        width = B.gaps[s] * scale
        items.append(("stretch", g.corner_region[0][s], y, y + width))
        y += width
    return items, y


def thick_compose(A: GapGraph, i: int, B: GapGraph, *, consolidate=True) -> GapGraph:
    """Strictly associative gluing of gap graphs; ``B`` may be 0-ary."""
    ga, gb = A.graph, B.graph
    if not 1 <= i <= ga.arity:
        raise ValueError(f"boundary {i} is not an input of a {ga.arity}-ary element")
    _require_gtree(ga, "left operand")
    _require_gtree(gb, "right operand")

    w1 = B.total_gap + sum(B.weights, ZERO)
    w2 = A.weight_at(i)
    if w1 <= 0 or w2 <= 0:
        raise GlueError("glued windows must have positive width")
    L = w1 * w2
    b_items, total = _b_layout(B, w2)
    if total != L:
        raise GlueError("window widths disagree after scaling")

    # A bands at window i: slot k covers y in [L - e_k, L - s_k]
    p = ga.window_size(i)
    a_bands = []
    x = ZERO
    for k in range(p):
        w = A.weights[ga.arc_at(i, k)] * w1
        a_bands.append((L - x - w, L - x))
        x += w
    # cut points: the marked point at y = 0 and the end of every band
    cuts = [(ZERO, ga.corner_region[i][p - 1])]
    cuts += [(a_bands[k][0], ga.corner_region[i][k]) for k in range(p - 1)]

    uf = _UnionFind()
    contacts = []
    stretches = [it for it in b_items if it[0] == "stretch"]
    for c, ra in cuts:
        hits = [st for st in stretches if st[2] <= c <= st[3]]
        if c == 0:
            hits = hits[:1]  # y = 0 and y = L are the same point of the marked stretch
        for st in hits:
            uf.union(("A", ra), ("B", st[1]))
            contacts.append(("A", ra))

    weights = {}
    # tokens along boundary 0 of A for every band of window i
    band_tokens = {}
    # pieces of every B band in decreasing y, with the A corner regions between them
    b_pieces: dict[int, list] = {}
    for k, (lo, hi) in enumerate(a_bands):
        tokens = []
        for it in b_items:
            kind, ref, u, v = it
            if kind == "band":
                a, b = max(u, lo), min(v, hi)
                if b > a:
                    key = ("P", k, ref)
                    weights[key] = b - a
                    tokens.append(("arc", key))
                    b_pieces.setdefault(ref, []).append((a, k, key))
            elif u <= hi and v >= lo:
                tokens.append(("stretch", ("B", ref), min(v, hi) - max(u, lo)))
        band_tokens[k] = tokens

    # boundary 0 of the result, written as a token stream
    stream = [("stretch", ("A", ga.corner_region[0][-1]), A.gap_star * w1)]
    for s in range(ga.window_size(0)):
        other = ga.partner[0][s]
        if other[0] == i:
            stream += band_tokens[other[1]]
        else:
            key = ("A", ga.arc_at(0, s))
            weights[key] = A.weights[ga.arc_at(0, s)] * w1
            stream.append(("arc", key))
        stream.append(("stretch", ("A", ga.corner_region[0][s]), A.gaps[s] * w1))

    runs = [[]]
    window0 = []
    for tok in stream:
        if tok[0] == "arc":
            window0.append(tok[1])
            runs.append([])
        else:
            runs[-1].append(tok)

    def run_region(run):
        roots = {uf.find(t[1]) for t in run}
        if len(roots) != 1:
            raise GlueError(f"boundary stretch joins regions that were never glued: {run}")
        return run[0][1]

    def run_width(run):
        return sum((t[2] for t in run), ZERO)

    corners0 = []
    gaps0 = []
    if window0:
        gap_star = run_width(runs[0])
        tail = runs[-1]
        if uf.find(runs[0][0][1]) != uf.find(tail[0][1]):
            raise GlueError("the marked corner of boundary 0 was split")
        for run in runs[1:]:
            corners0.append(run_region(run))
            gaps0.append(run_width(run))
        run_region(runs[0])
    else:
        gap_star = run_width(runs[0])
        corners0 = []

    windows = [window0]
    corners = [corners0]
    for b in range(1, ga.boundary_count):
        if b == i:
            for j in range(1, gb.boundary_count):
                win, cor = [], []
                for s in range(gb.window_size(j)):
                    band = gb.partner[j][s][1]
                    pieces = sorted(b_pieces.get(band, []), key=lambda t: t[0], reverse=True)
                    if not pieces:
                        raise GlueError("a band of the right operand vanished")
                    for n, (_, k, key) in enumerate(pieces):
                        win.append(key)
                        if n < len(pieces) - 1:
                            cor.append(("A", ga.corner_region[i][k]))
                        else:
                            cor.append(("B", gb.corner_region[j][s]))
                windows.append(win)
                corners.append(cor)
        else:
            windows.append([("A", ga.arc_at(b, s)) for s in range(ga.window_size(b))])
            corners.append([("A", r) for r in ga.corner_region[b]])

    chi = {}
    for r in range(ga.region_count):
        root = uf.find(("A", r))
        chi[root] = chi.get(root, 0) + ga.region_chi(r)
    for r in range(gb.region_count):
        root = uf.find(("B", r))
        chi[root] = chi.get(root, 0) + gb.region_chi(r)
    for c in contacts:
        chi[uf.find(c)] -= 1
    corners = [[uf.find(c) for c in row] for row in corners]
    used = {c for row in corners for c in row}
    if not window0 and len(windows) == 1:
        used = set(chi)
    if set(chi) - used:
        raise GlueError("a complementary region lost all its corners")

    d = Draft(windows, corners, chi, weights, gaps0, gap_star)
    if consolidate:
        d.consolidate(respect_gaps=True)
    graph, w, gaps, gstar = d.finish()
    return GapGraph(graph, w, gaps, gstar)


def fatten(alpha: WeightedArcGraph) -> GapGraph:
    """Gap graph with all gaps zero; a bare surface becomes a disc of width one."""
    if alpha.graph.is_empty:
        return disc_gap(1, alpha.graph.region_genus[0])
    n = alpha.graph.window_size(0)
    return GapGraph(alpha.graph, alpha.weights, (ZERO,) * n, ZERO)


def retract(G: GapGraph) -> WeightedArcGraph:
    """Scale all gaps to zero and merge the bands that become parallel."""
    d = Draft.from_graph(G.graph, G.weights)
    d.consolidate()
    graph, w, _, _ = d.finish()
    return WeightedArcGraph(graph, w)


def compose(alpha: WeightedArcGraph, i: int, beta: WeightedArcGraph) -> WeightedArcGraph:
    """``alpha o_i beta``; ``beta`` may be a 0-ary surface (extended gluing)."""
    return retract(thick_compose(fatten(alpha), i, fatten(beta)))


def surface(genus=0) -> WeightedArcGraph:
    """The 0-ary element: a genus ``g`` surface with one boundary and no arcs."""
    return WeightedArcGraph(ArcGraph.empty(genus), ())


def disc_gap(width=1, genus=0) -> GapGraph:
    return GapGraph(ArcGraph.empty(genus), (), (), Fraction(width))


def degeneracy(alpha: WeightedArcGraph, i: int) -> WeightedArcGraph:
    """Cap boundary ``i`` with a disc, erasing the arcs that ended there."""
    if i == 0:
        raise ValueError("boundary 0 cannot be capped")
    return compose(alpha, i, surface(0))


# -- twists -------------------------------------------------------------------


def identity(weight=1) -> WeightedArcGraph:
    g = ArcGraph((((1, 0),), ((0, 0),)), ((0,), (0,)), (0,))
    return WeightedArcGraph(g, (Fraction(weight),))


_T_GRAPH = ArcGraph((((1, 0), (1, 1)), ((0, 0), (0, 1))), ((0, 1), (1, 0)), (0, 0))


def twist(a) -> WeightedArcGraph:
    """``T_a``: rotation of the marked point of a cylinder by ``a`` turns."""
    a = Fraction(a)
    if not 0 <= a < 1:
        raise ValueError("twist parameter must lie in [0, 1)")
    if a == 0:
        return identity()
    return WeightedArcGraph(_T_GRAPH, (a, 1 - a))


def _mod1(a):
    a = Fraction(a)
    return a - (a.numerator // a.denominator)


def twist_at(alpha: WeightedArcGraph, i: int, a) -> WeightedArcGraph:
    a = _mod1(a)
    if i == 0:
        return compose(twist(_mod1(1 - a)), 1, alpha)
    return compose(alpha, i, twist(a))


def _rotate(alpha: WeightedArcGraph, b: int, r: int) -> WeightedArcGraph:
    """Move the marked point of boundary ``b`` forward past ``r`` arc ends."""
    d = Draft.from_graph(alpha.graph, alpha.weights)
    d.windows[b] = d.windows[b][r:] + d.windows[b][:r]
    d.corners[b] = d.corners[b][r:] + d.corners[b][:r]
    d.consolidate()
    graph, w, _, _ = d.finish()
    return WeightedArcGraph(graph, w)


def untwist_canonical(alpha: WeightedArcGraph):
    """Split a CGTree element into an LGTree element and one twist per input.

    Returns ``(alpha_prime, twists)`` with ``alpha`` equal to ``alpha_prime``
    composed with ``T_{t_i}`` at each input ``i``, projectively.
    """
    g = alpha.graph
    if not is_cgtree(g):
        raise InvalidGraphError("only cyclically anti-compatible graphs can be untwisted")
    twists = []
    cur = alpha
    for b in range(1, g.boundary_count):
        gc = cur.graph
        order = [gc.partner[b][k][1] for k in range(gc.window_size(b))]
        r = order.index(max(order))
        total = cur.weight_at(b)
        moved = sum((cur.weights[gc.arc_at(b, k)] for k in range(r)), ZERO)
        twists.append(_mod1(moved / total))
        if r:
            cur = _rotate(cur, b, r)
    return cur, tuple(twists)


def untwist_at_zero(alpha: WeightedArcGraph):
    """Move the marked point at 0 out of a twisting rectangle.

    Returns ``(b, alpha_prime)`` with ``alpha = T_b o_1 alpha_prime``
    projectively and ``alpha_prime`` not twisted at 0.
    """
    b = ZERO
    cur = alpha
    for _ in range(alpha.graph.arc_count + 1):
        if not is_twisted_at(cur.graph, 0):
            return _mod1(b), cur
        total = sum(cur.weights, ZERO)
        b += cur.weights[cur.graph.arc_at(0, 0)] / total
        cur = _rotate(cur, 0, 1)
    raise GlueError("untwisting at 0 did not terminate")


def relabel_weighted(alpha: WeightedArcGraph, perm) -> WeightedArcGraph:
    from .arcgraph import relabel

    g, w = relabel(alpha.graph, perm, alpha.weights)
    return WeightedArcGraph(g, w)
