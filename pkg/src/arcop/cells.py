"""Cellular chains on GTree with all input boundaries normalized to weight one.

A cell is a combinatorial type of graph.  Its weights range over a product of
open simplices, one per input boundary ``k``, whose vertices are the arcs of
window ``k`` in window order; the cell is oriented by listing the factors by
boundary label.  Faces arise when a weight goes to zero and the arc is erased.
In the stabilized complex the face is replaced by its stable class, and a
face that lost further arcs to consolidation has too small a dimension to
contribute.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import sympy
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.matrices import DomainMatrix

from ._draft import Draft
from .arcgraph import (
    ArcGraph,
    WeightedArcGraph,
    enumerate_graphs,
    from_sequence,
    is_gtree,
    relabel,
    validate,
)
from .errors import InvalidGraphError
from .glue import compose
from .stabilize import st_graph


@dataclass(frozen=True)
class Cell:
    graph: ArcGraph

    def __post_init__(self):
        if not is_gtree(self.graph) or self.graph.is_empty:
            raise InvalidGraphError("cells are nonempty GTree graphs")
        validate(self.graph)

    @property
    def arity(self):
        return self.graph.arity

    @property
    def dim(self):
        return self.graph.arc_count - self.graph.arity

    @property
    def factor_dims(self):
        return tuple(self.graph.window_size(k) - 1 for k in range(1, self.graph.boundary_count))

    def sort_key(self):
        g = self.graph
        return (g.arity, g.arc_count, g.partner, g.corner_region, g.region_genus)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        from .arcgraph import describe

        return f"Cell(dim {self.dim}: {describe(self.graph)})"


class Chain:
    """Finite linear combination of cells over Z or Z/p."""

    def __init__(self, terms=None, modulus: int | None = None):
        self.modulus = modulus
        self.terms: dict[Cell, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for cell, c in items:
                self.add(cell, c)

    def _norm(self, c):
        return c % self.modulus if self.modulus else c

    def add(self, cell: Cell, coeff: int):
        c = self._norm(self.terms.get(cell, 0) + coeff)
        if c:
            self.terms[cell] = c
        else:
            self.terms.pop(cell, None)
        return self

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: t[0].sort_key()))

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, cell):
        return self.terms.get(cell, 0)

    def __add__(self, other):
        out = Chain(self.terms, self.modulus)
        for cell, c in other.terms.items():
            out.add(cell, c)
        return out

    def __neg__(self):
        return Chain({c: -x for c, x in self.terms.items()}, self.modulus)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return Chain({c: k * x for c, x in self.terms.items()}, self.modulus)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Chain) and self.terms == other.terms and self.modulus == other.modulus

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "Chain(" + " ".join(f"{c:+d}*{cell!r}" for cell, c in self) + ")"

    def map(self, f):
        """Apply a linear map given on cells (returning chains)."""
        out = Chain(modulus=self.modulus)
        for cell, c in self.terms.items():
            out = out + f(cell) * c
        return out


# -- boundary -------------------------------------------------------------------


def _erase(graph: ArcGraph, arc: int, stabilized: bool):
    d = Draft.from_graph(graph)
    d.delete_arc(arc)
    d.consolidate()
    face = d.finish()[0]
    if stabilized:
        face = st_graph(face)
    return face if face.arc_count == graph.arc_count - 1 else None


@lru_cache(maxsize=None)
def _boundary_terms(graph: ArcGraph, stabilized: bool):
    terms = []
    offset = 0
    for k in range(1, graph.boundary_count):
        m = graph.window_size(k)
        if m >= 2:
            for t in range(m):
                face = _erase(graph, graph.arc_at(k, t), stabilized)
                if face is not None:
                    terms.append((Cell(face), (-1) ** (offset + t)))
        offset += m - 1
    return tuple(terms)


def boundary(c, stabilized: bool = False) -> Chain:
    if isinstance(c, Chain):
        return c.map(lambda cell: boundary(cell, stabilized))
    return Chain(_boundary_terms(c.graph, stabilized))


# -- symmetric group action -----------------------------------------------------


def koszul_sign(dims, perm) -> int:
    """Sign of reordering factors of the given dimensions by ``perm``."""
    s = 0
    for a in range(len(dims)):
        for b in range(a + 1, len(dims)):
            if perm[a] > perm[b]:
                s += dims[a] * dims[b]
    return -1 if s % 2 else 1


def perm_sign(perm) -> int:
    inv = sum(1 for a, b in itertools.combinations(range(len(perm)), 2) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


def act_perm(cell: Cell, perm) -> tuple[Cell, int]:
    """Relabel input ``k`` as ``perm[k-1]``; returns the image and its orientation sign."""
    return Cell(relabel(cell.graph, perm)), koszul_sign(cell.factor_dims, perm)


def permute(c: Chain, perm) -> Chain:
    def f(cell):
        img, s = act_perm(cell, perm)
        return Chain({img: s}, c.modulus)

    return c.map(f)


# -- composition ----------------------------------------------------------------


def _uniform(graph: ArcGraph):
    w = [None] * graph.arc_count
    for k in range(1, graph.boundary_count):
        m = graph.window_size(k)
        for t in range(m):
            w[graph.arc_at(k, t)] = Fraction(1, m)
    return w


def _chart(wg: WeightedArcGraph):
    g = wg.graph
    out = []
    for k in range(1, g.boundary_count):
        total = wg.weight_at(k)
        out += [wg.weights[g.arc_at(k, t)] / total for t in range(1, g.window_size(k))]
    return out


def _params(graph: ArcGraph):
    return [(k, t) for k in range(1, graph.boundary_count) for t in range(1, graph.window_size(k))]


def _nudge(graph, weights, k, t, eps):
    w = list(weights)
    w[graph.arc_at(k, t)] += eps
    w[graph.arc_at(k, 0)] -= eps
    return w


def _interleavings(p, q):
    """Positions of the ``p - 1`` interior cuts of A among all ``p + q - 2`` cuts."""
    return itertools.combinations(range(p + q - 2), p - 1)


def _chamber_weights(ga: ArcGraph, i: int, gb: ArcGraph, wb, slots):
    """Weights of ``a`` realizing the given interleaving against ``b``'s cuts."""
    p, q = ga.window_size(i), gb.window_size(0)
    L = Fraction(gb.arity)
    ycuts = []
    y = Fraction(0)
    for s in range(q - 1):
        y += wb[gb.arc_at(0, s)]
        ycuts.append(y)
    # label the merged cut order, then place A cuts evenly between B cuts
    merged = ["A" if n in slots else "B" for n in range(p + q - 2)]
    bounds = [Fraction(0)] + ycuts + [L]
    acuts = []
    seg, pending = 0, 0
    for tag in merged + ["end"]:
        if tag == "A":
            pending += 1
            continue
        lo, hi = bounds[seg], bounds[seg + 1]
        acuts += [lo + (hi - lo) * Fraction(s, pending + 1) for s in range(1, pending + 1)]
        pending = 0
        seg += 1
    edges = [Fraction(0)] + acuts + [L]
    lengths = [edges[n + 1] - edges[n] for n in range(p)]
    wa = _uniform(ga)
    # window order of A at i runs against y
    for k in range(p):
        wa[ga.arc_at(i, k)] = lengths[p - 1 - k] / L
    return wa


def _orientation_sign(ga, wa, i, gb, wb, result_graph):
    base = compose(WeightedArcGraph(ga, wa), i, WeightedArcGraph(gb, wb))
    if base.graph != result_graph:
        raise AssertionError("chamber base point has the wrong type")
    ref = _chart(base)
    eps = Fraction(1, 64 * (ga.arc_count + gb.arc_count) ** 2)
    cuts = [w for w in wa + wb]
    eps = min(eps, min(cuts) / 8)
    while True:
        cols = []
        ok = True
        for which, (g, w) in (("a", (ga, wa)), ("b", (gb, wb))):
            for k, t in _params(g):
                nw = _nudge(g, w, k, t, eps)
                if which == "a":
                    moved = compose(WeightedArcGraph(g, nw), i, WeightedArcGraph(gb, wb))
                else:
                    moved = compose(WeightedArcGraph(ga, wa), i, WeightedArcGraph(g, nw))
                if moved.graph != base.graph:
                    ok = False
                    break
                cols.append([(x - y) / eps for x, y in zip(_chart(moved), ref)])
            if not ok:
                break
        if ok:
            break
        eps /= 4
    if not cols:
        return 1
    det = sympy.Matrix(cols).T.det()
    if det == 0:
        raise AssertionError("degenerate chamber in chain composition")
    return 1 if det > 0 else -1


@lru_cache(maxsize=None)
def _compose_terms(ga: ArcGraph, i: int, gb: ArcGraph, stabilized: bool):
    p, q = ga.window_size(i), gb.window_size(0)
    wb = _uniform(gb)
    terms: dict[Cell, int] = {}
    target = ga.arc_count + gb.arc_count - 1
    for slots in _interleavings(p, q):
        wa = _chamber_weights(ga, i, gb, wb, set(slots))
        res = compose(WeightedArcGraph(ga, wa), i, WeightedArcGraph(gb, wb))
        if res.graph.arc_count != target:
            continue
        sign = _orientation_sign(ga, wa, i, gb, wb, res.graph)
        graph = st_graph(res.graph) if stabilized else res.graph
        if graph.arc_count != target:
            continue
        cell = Cell(graph)
        terms[cell] = terms.get(cell, 0) + sign
    return tuple((c, x) for c, x in terms.items() if x)


def chain_compose(a, i: int, b, stabilized: bool = False) -> Chain:
    """Cellular operad composition ``a o_i b`` (bilinear in chains)."""
    if isinstance(a, Chain) or isinstance(b, Chain):
        ca = a if isinstance(a, Chain) else Chain({a: 1})
        cb = b if isinstance(b, Chain) else Chain({b: 1})
        out = Chain(modulus=ca.modulus or cb.modulus)
        for x, s in ca.terms.items():
            for y, t in cb.terms.items():
                out = out + chain_compose(x, i, y, stabilized) * (s * t)
        return out
    if not 1 <= i <= a.arity:
        raise ValueError(f"no input {i} on a {a.arity}-ary cell")
    return Chain(_compose_terms(a.graph, i, b.graph, stabilized))


# -- named cells and chains ------------------------------------------------------


def alternating(length: int, start: int = 1):
    other = 3 - start
    return tuple(start if n % 2 == 0 else other for n in range(length))


def cup(i: int) -> Cell:
    """The ``cup_i`` cell: alternating sequence of ``i + 2`` arcs."""
    if i < 0:
        raise ValueError("cup_i needs i >= 0")
    return Cell(from_sequence(alternating(i + 2)))


def tau(cell: Cell) -> Cell:
    return act_perm(cell, (2, 1))[0]


def corolla(n: int) -> Cell:
    return Cell(from_sequence(tuple(range(1, n + 1))))


def sequence_cell(s) -> Cell:
    return Cell(from_sequence(s))


def dl_class(p: int) -> Chain:
    """Left-iterated composite of ``cup_1`` in the stabilized complex."""
    if p < 2:
        raise ValueError("the Dyer-Lashof class needs p >= 2")
    c = Chain({cup(1): 1})
    for _ in range(p - 2):
        c = chain_compose(c, 1, cup(1), stabilized=True)
    return c


def coinvariant_reduce(c: Chain, p: int) -> Chain:
    """Image in the sign-twisted coinvariants of the symmetric group, mod ``p``."""
    out = Chain(modulus=p)
    for cell, coeff in c.terms.items():
        n = cell.arity
        images = []
        for perm in itertools.permutations(range(1, n + 1)):
            img, k = act_perm(cell, perm)
            images.append((img, k * perm_sign(perm)))
        rep = min(img for img, _ in images)
        signs = {s for img, s in images if img == rep}
        if len(signs) > 1 and p != 2:
            continue  # the orbit carries a sign-reversing stabilizer: zero for odd p
        out.add(rep, coeff * signs.pop())
    return out


# -- enumeration of cells ------------------------------------------------------------


def cells(n: int, max_arcs: int, *, stabilized=False, lgtree=False, max_genus=1, limit=2_000_000):
    """All cells with ``n`` inputs and at most ``max_arcs`` arcs."""
    out = []
    for g in range(max_genus + 1):
        out += enumerate_graphs(
            n, max_arcs, genus=g, max_genus=max_genus, quasi_filling=stabilized, lgtree=lgtree, limit=limit
        )
    return sorted({Cell(g) for g in out})


def stlgtree2_cells(max_dim: int):
    out = {}
    for d in range(max_dim + 1):
        out[d] = [cup(d), tau(cup(d))]
    return out


# -- homology ---------------------------------------------------------------------


def _describe(free: int, torsion: Iterable[int], modulus=None) -> str:
    if modulus:
        if free == 0:
            return "0"
        return f"Z/{modulus}" if free == 1 else f"(Z/{modulus})^{free}"
    parts = []
    if free == 1:
        parts.append("Z")
    elif free > 1:
        parts.append(f"Z^{free}")
    parts += [f"Z/{t}" for t in torsion]
    return "+".join(parts) if parts else "0"


def _matrix(dom, cod, bd):
    index = {c: r for r, c in enumerate(cod)}
    rows = [[0] * len(dom) for _ in cod]
    for col, cell in enumerate(dom):
        for face, x in bd(cell).terms.items():
            rows[index[face]][col] += x
    return rows


def chain_homology(basis: dict[int, list], bd, top: int, modulus=None) -> list[str]:
    """Homology in degrees ``0..top`` of the complex spanned by ``basis``."""
    ranks, torsion = {}, {}
    for d in range(1, top + 2):
        dom, cod = basis.get(d, []), basis.get(d - 1, [])
        if not dom or not cod:
            ranks[d], torsion[d] = 0, []
            continue
        rows = _matrix(dom, cod, bd)
        if modulus:
            dm = DomainMatrix.from_list_sympy(len(rows), len(dom), rows).convert_to(sympy.GF(modulus))
            ranks[d], torsion[d] = dm.rank(), []
        else:
            inv = [abs(int(x)) for x in invariant_factors(sympy.Matrix(rows), domain=sympy.ZZ)]
            inv = [x for x in inv if x]
            ranks[d], torsion[d] = len(inv), [x for x in inv if x > 1]
    out = []
    for d in range(top + 1):
        free = len(basis.get(d, [])) - ranks.get(d, 0) - ranks[d + 1]
        out.append(_describe(free, torsion[d + 1], modulus))
    return out


def homology(space: str = "stlgtree2", max_dim: int = 5, coeffs: str = "Z", filtration=None, p: int = 2):
    """Homology of the two-input stabilized LGTree complex or one of its filtration stages.

    For the full complex truncated above ``max_dim`` the groups in degrees
    ``0..max_dim-1`` are returned; for the stage ``filtration = n`` all cells
    of dimension at most ``n - 1`` are used and every degree is returned.
    """
    if space not in ("stlgtree2", "stlgtree2_filtration"):
        raise ValueError(f"unknown space {space!r}")
    if space == "stlgtree2_filtration" and filtration is None:
        raise ValueError("the filtration stage needs n")
    if filtration is not None:
        basis = stlgtree2_cells(filtration - 1)
        top = filtration - 1
    else:
        basis = stlgtree2_cells(max_dim)
        top = max_dim - 1

    def bd(cell):
        return boundary(cell, stabilized=True)

    if coeffs == "Z":
        return chain_homology(basis, bd, top)
    if coeffs == "Zp-sign":
        if not sympy.isprime(p):
            raise ValueError(f"Zp-sign coefficients need a prime p, got {p}")
        reduced = {d: sorted({next(iter(coinvariant_reduce(Chain({c: 1}), p).terms), None) for c in cs} - {None})
                   for d, cs in basis.items()}

        def bd_p(cell):
            return coinvariant_reduce(bd(cell), p)

        return chain_homology(reduced, bd_p, top, modulus=p)
    raise ValueError(f"unknown coefficients {coeffs!r}")
