"""Combinatorial model of arc graphs on surfaces with boundary.

An arc graph is stored by its dual-graph data: for every boundary the window
of arc endpoints read from the marked point along the boundary orientation,
the pairing of endpoints into arcs, and a decoration of the complementary
regions.  Half-edges are positional, ``(boundary, slot)``, so two graphs are
equal exactly when all this data agrees.

Corners are identified with half-edges: corner ``(b, k)`` is the stretch of
boundary ``b`` after slot ``k``; the corner after the last slot is the marked
corner that contains the marked point.  Walking along a region boundary, the
corner ``(b, k)`` is followed by the arc leaving ``(b, k + 1)`` and then by the
corner after that arc's other endpoint.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import EnumerationTooLarge, InvalidGraphError

HalfEdge = tuple[int, int]


@dataclass(frozen=True)
class ArcGraph:
    partner: tuple[tuple[HalfEdge, ...], ...]
    corner_region: tuple[tuple[int, ...], ...]
    region_genus: tuple[int, ...]

    def __post_init__(self):
        _check_structure(self)

    @classmethod
    def empty(cls, genus=0):
        """The surface of the given genus with one boundary and no arcs."""
        return cls(((),), ((),), (genus,))

    # -- basic shape -----------------------------------------------------

    @property
    def boundary_count(self):
        return len(self.partner)

    @property
    def arity(self):
        return len(self.partner) - 1

    @property
    def is_empty(self):
        return not any(self.partner)

    @property
    def windows(self):
        return tuple(tuple((b, k) for k in range(len(w))) for b, w in enumerate(self.partner))

    def window_size(self, b):
        return len(self.partner[b])

    @cached_property
    def arcs(self) -> tuple[tuple[HalfEdge, HalfEdge], ...]:
        """Arcs as half-edge pairs, in the canonical order of first appearance."""
        out = []
        for b, row in enumerate(self.partner):
            for k, other in enumerate(row):
                if (b, k) < other:
                    out.append(((b, k), other))
        return tuple(out)

    @cached_property
    def _arc_index(self):
        index = {}
        for i, (h, h2) in enumerate(self.arcs):
            index[h] = i
            index[h2] = i
        return index

    def arc_at(self, b, k):
        return self._arc_index[(b, k)]

    @property
    def arc_count(self):
        return len(self.arcs)

    def arcs_at(self, b):
        """Arc indices at boundary ``b`` in window order."""
        return tuple(self.arc_at(b, k) for k in range(len(self.partner[b])))

    @property
    def region_count(self):
        return len(self.region_genus)

    @cached_property
    def orbits(self) -> tuple[tuple[HalfEdge, ...], ...]:
        return _orbits(self.partner)

    @cached_property
    def region_orbit_count(self):
        counts = [0] * self.region_count
        for orbit in self.orbits:
            b, k = orbit[0]
            counts[self.corner_region[b][k]] += 1
        return tuple(counts)

    def region_chi(self, r):
        if self.is_empty:
            return 1 - 2 * self.region_genus[r]
        return 2 - 2 * self.region_genus[r] - self.region_orbit_count[r]

    def is_marked(self, corner):
        b, k = corner
        return k == len(self.partner[b]) - 1

    def __repr__(self):
        return f"ArcGraph({describe(self)})"


def _orbits(partner):
    seen = set()
    out = []
    for b, row in enumerate(partner):
        for k in range(len(row)):
            if (b, k) in seen:
                continue
            orbit = []
            c = (b, k)
            while c not in seen:
                seen.add(c)
                orbit.append(c)
                cb, ck = c
                c = partner[cb][(ck + 1) % len(partner[cb])]
            out.append(tuple(orbit))
    return tuple(out)


def _check_structure(g: ArcGraph):
    if len(g.corner_region) != len(g.partner):
        raise InvalidGraphError("corner decoration does not match the windows")
    if not g.partner:
        raise InvalidGraphError("an arc graph needs at least one boundary")
    if any(x < 0 for x in g.region_genus):
        raise InvalidGraphError("region genera must be nonnegative")
    if g.is_empty:
        if len(g.partner) != 1 or len(g.region_genus) != 1:
            raise InvalidGraphError("only a single boundary may carry an empty foliation")
        return
    for b, row in enumerate(g.partner):
        if not row:
            raise InvalidGraphError(f"window {b} is empty (graphs must be exhaustive)")
        if len(g.corner_region[b]) != len(row):
            raise InvalidGraphError(f"window {b}: corner decoration has the wrong length")
        for k, other in enumerate(row):
            ob, ok = other
            if not (0 <= ob < len(g.partner) and 0 <= ok < len(g.partner[ob])):
                raise InvalidGraphError(f"half-edge {(b, k)} is paired with missing {other}")
            if g.partner[ob][ok] != (b, k) or other == (b, k):
                raise InvalidGraphError(f"half-edge {(b, k)} is not properly paired")
    seen = []
    for row in g.corner_region:
        for r in row:
            if r not in seen:
                if r != len(seen):
                    raise InvalidGraphError("regions are not numbered canonically")
                seen.append(r)
    if len(seen) != len(g.region_genus):
        raise InvalidGraphError("region genus list does not match the regions in use")
    for orbit in _orbits(g.partner):
        regions = {g.corner_region[b][k] for b, k in orbit}
        if len(regions) != 1:
            raise InvalidGraphError(f"boundary cycle {orbit} is split between regions {regions}")
    # connectivity: boundaries joined by arcs or by sharing a region
    parent = list(range(len(g.partner)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    region_home = {}
    for b, row in enumerate(g.partner):
        for k, (ob, _) in enumerate(row):
            parent[find(b)] = find(ob)
            r = g.corner_region[b][k]
            region_home.setdefault(r, b)
            parent[find(b)] = find(region_home[r])
    if len({find(b) for b in range(len(g.partner))}) != 1:
        raise InvalidGraphError("the ambient surface is disconnected")
    chi = sum(2 - 2 * gr for gr in g.region_genus) - len(_orbits(g.partner)) - sum(
        len(row) for row in g.partner
    ) // 2
    genus2 = 2 - chi - len(g.partner)
    if genus2 < 0 or genus2 % 2:
        raise InvalidGraphError(f"region decoration gives a non-integral ambient genus ({genus2}/2)")


def describe(g: ArcGraph) -> str:
    if g.is_empty:
        return f"empty, genus {g.region_genus[0]}"
    wins = " | ".join(
        f"{b}:" + ",".join(str(g.arc_at(b, k)) for k in range(len(row)))
        for b, row in enumerate(g.partner)
    )
    regs = " | ".join(",".join(str(r) for r in row) for row in g.corner_region)
    return f"[{wins}] regions [{regs}] genus {list(g.region_genus)}"


# -- derived quantities ---------------------------------------------------


def face_trace(g: ArcGraph):
    """Boundary cycles of the complementary regions, as tuples of corners."""
    return g.orbits


def euler_defect(g: ArcGraph) -> int:
    return sum(g.region_chi(r) - 1 for r in range(g.region_count))


def euler_characteristic(g: ArcGraph) -> int:
    """Euler characteristic of the ambient surface."""
    return sum(g.region_chi(r) for r in range(g.region_count)) - g.arc_count


def ambient_genus(g: ArcGraph) -> int:
    genus2 = 2 - euler_characteristic(g) - g.boundary_count
    if genus2 < 0 or genus2 % 2:
        raise InvalidGraphError("invalid region decoration")
    return genus2 // 2


def is_quasi_filling(g: ArcGraph) -> bool:
    return euler_defect(g) == 0


def _rectangle_sides(g: ArcGraph, r: int):
    """The two arcs bounding region ``r`` if it is an unmarked rectangle."""
    if g.region_genus[r] or g.region_orbit_count[r] != 1:
        return None
    for orbit in g.orbits:
        b, k = orbit[0]
        if g.corner_region[b][k] != r:
            continue
        if len(orbit) != 2 or any(g.is_marked(c) for c in orbit):
            return None
        left, right = g.arc_at(b, k), g.arc_at(b, k + 1)
        return None if left == right else (left, right)
    return None


def are_parallel(g: ArcGraph, e: int, f: int) -> bool:
    if e == f:
        raise ValueError("an arc is not compared with itself")
    for r in range(g.region_count):
        sides = _rectangle_sides(g, r)
        if sides is not None and set(sides) == {e, f}:
            return True
    return False


def parallel_pairs(g: ArcGraph):
    out = []
    for r in range(g.region_count):
        sides = _rectangle_sides(g, r)
        if sides is not None:
            out.append(tuple(sorted(sides)))
    return out


def validate(g: ArcGraph, allow_parallel=False) -> ArcGraph:
    """Full invariant check; structural checks already ran at construction."""
    if not allow_parallel:
        pairs = parallel_pairs(g)
        if pairs:
            raise InvalidGraphError(f"arcs {pairs[0]} are parallel")
    return g


def is_twisted_at(g: ArcGraph, i: int) -> bool:
    m = g.window_size(i)
    if m < 2:
        return False
    marked = (i, m - 1)
    r = g.corner_region[i][m - 1]
    if g.region_genus[r] or g.region_orbit_count[r] != 1:
        return False
    # the far side of the rectangle may carry the other marked point: the two
    # arcs are then homotopic once marked points are ignored, which is the
    # reading under which untwisted genus-one graphs have at most four arcs
    orbit = next(o for o in g.orbits if marked in o)
    return len(orbit) == 2


def is_untwisted(g: ArcGraph) -> bool:
    return not any(is_twisted_at(g, b) for b in range(g.boundary_count))


def is_possibly_twisted_at_zero(g: ArcGraph) -> bool:
    return not any(is_twisted_at(g, b) for b in range(1, g.boundary_count))


def is_gtree(g: ArcGraph) -> bool:
    if g.is_empty:
        return True
    return all((h[0] == 0) != (h2[0] == 0) for h, h2 in g.arcs)


def _orders_at(g: ArcGraph):
    """For each boundary i >= 1, window-0 positions of its arcs in window-i order."""
    out = {}
    for b in range(1, g.boundary_count):
        out[b] = [g.partner[b][k][1] for k in range(g.window_size(b))]
    return out


def is_lgtree(g: ArcGraph) -> bool:
    if not is_gtree(g):
        return False
    return all(
        all(x > y for x, y in zip(order, order[1:])) for order in _orders_at(g).values()
    )


def is_cgtree(g: ArcGraph) -> bool:
    if not is_gtree(g):
        return False
    for order in _orders_at(g).values():
        descents = sum(1 for x, y in zip(order, order[1:]) if x < y)
        if len(order) > 1 and order[-1] < order[0]:
            descents += 1
        if descents > (1 if len(order) > 1 else 0):
            return False
    return True


def seq(g: ArcGraph) -> tuple[int, ...]:
    """Non-zero boundary label of each arc, read along window 0."""
    if not is_gtree(g):
        raise InvalidGraphError("the sequence is only defined for graphs with all arcs at 0")
    return tuple(other[0] for other in g.partner[0])


# -- construction helpers -------------------------------------------------


def graph_from_partner(partner, region_of_orbit=None, genus=None) -> ArcGraph:
    """Decorate a bare pairing; by default every boundary cycle is its own disc."""
    partner = tuple(tuple(row) for row in partner)
    orbits = _orbits(partner)
    if region_of_orbit is None:
        region_of_orbit = list(range(len(orbits)))
    corner = {}
    for o, orbit in enumerate(orbits):
        for c in orbit:
            corner[c] = region_of_orbit[o]
    rename = {}
    rows = []
    for b, row in enumerate(partner):
        out = []
        for k in range(len(row)):
            r = corner[(b, k)]
            if r not in rename:
                rename[r] = len(rename)
            out.append(rename[r])
        rows.append(tuple(out))
    gen = [0] * len(rename)
    if genus is not None:
        for r, i in rename.items():
            gen[i] = genus[r]
    return ArcGraph(partner, tuple(rows), tuple(gen))


def from_sequence(s: Sequence[int], arity: int | None = None) -> ArcGraph:
    """The quasi-filling LGTree graph whose window-0 labels read ``s``."""
    s = tuple(s)
    n = max(s) if arity is None else arity
    if set(s) != set(range(1, n + 1)):
        raise InvalidGraphError(f"sequence {s} does not hit every boundary 1..{n}")
    partner = [[None] * len(s)] + [[] for _ in range(n)]
    for b in range(1, n + 1):
        slots = [k for k, x in enumerate(s) if x == b][::-1]
        for j, k in enumerate(slots):
            partner[b].append((0, k))
            partner[0][k] = (b, j)
    return graph_from_partner(partner)


def relabel(g: ArcGraph, perm: Sequence[int], weights=None):
    """Move boundary ``b`` to ``perm[b - 1]`` (boundary 0 stays put).

    Returns the relabelled graph, and the permuted weights when given.
    """
    from ._draft import Draft

    n = g.arity
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{n}")
    d = Draft.from_graph(g, weights)
    order = [0] + [0] * n
    for b in range(1, n + 1):
        order[perm[b - 1]] = b
    d.windows = [d.windows[b] for b in order]
    d.corners = [d.corners[b] for b in order]
    out, w, _, _ = d.finish()
    return out if weights is None else (out, w)


# -- weighted variants ----------------------------------------------------


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class WeightedArcGraph:
    graph: ArcGraph
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(_as_fraction(w) for w in self.weights))
        if len(self.weights) != self.graph.arc_count:
            raise InvalidGraphError("one weight per arc is required")
        if any(w <= 0 for w in self.weights):
            raise InvalidGraphError("arc weights must be positive")
        validate(self.graph)

    def weight_at(self, b):
        return sum((self.weights[a] for a in self.graph.arcs_at(b)), Fraction(0))

    def scaled(self, factor):
        return WeightedArcGraph(self.graph, tuple(w * factor for w in self.weights))

    def normalized(self):
        """Projective representative with total weight one (identity on 0-ary)."""
        total = sum(self.weights, Fraction(0))
        return self if total == 0 else self.scaled(1 / total)

    @property
    def arity(self):
        return self.graph.arity


@dataclass(frozen=True)
class GapGraph:
    """Weighted graph with gap widths at boundary 0.

    ``gaps[k]`` is the width after the arc in slot ``k`` of window 0 and
    ``gap_star`` the width before the first arc.  Parallel arcs are allowed
    when a positive gap separates them at boundary 0.
    """

    graph: ArcGraph
    weights: tuple[Fraction, ...]
    gaps: tuple[Fraction, ...]
    gap_star: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(_as_fraction(w) for w in self.weights))
        object.__setattr__(self, "gaps", tuple(_as_fraction(w) for w in self.gaps))
        object.__setattr__(self, "gap_star", _as_fraction(self.gap_star))
        g = self.graph
        if len(self.weights) != g.arc_count or len(self.gaps) != g.window_size(0):
            raise InvalidGraphError("weights and gaps do not match the graph")
        if any(w <= 0 for w in self.weights) or any(x < 0 for x in self.gaps) or self.gap_star < 0:
            raise InvalidGraphError("weights must be positive and gaps nonnegative")
        if g.is_empty and self.gap_star <= 0:
            raise InvalidGraphError("an empty foliation needs a positive gap")
        for r in range(g.region_count):
            sides = _rectangle_sides(g, r)
            if sides is None:
                continue
            corner = next(
                (0, k) for k in range(g.window_size(0)) if g.corner_region[0][k] == r
            )
            if self.gaps[corner[1]] <= 0:
                raise InvalidGraphError(f"parallel arcs {sides} are not separated by a gap")

    @property
    def arity(self):
        return self.graph.arity

    @property
    def total_gap(self):
        return sum(self.gaps, self.gap_star)

    def weight_at(self, b):
        return sum((self.weights[a] for a in self.graph.arcs_at(b)), Fraction(0))

    def scaled(self, factor):
        return GapGraph(
            self.graph,
            tuple(w * factor for w in self.weights),
            tuple(x * factor for x in self.gaps),
            self.gap_star * factor,
        )

    def normalized(self):
        total = sum(self.weights, self.total_gap)
        return self.scaled(1 / total)


# -- enumeration ------------------------------------------------------------


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for x in range(total + 1):
        for rest in _compositions(total - x, parts - 1):
            yield (x,) + rest


def _pairings(n, k):
    """All GTree pairings with ``k`` arcs onto boundaries 1..n."""
    for labels in itertools.product(range(1, n + 1), repeat=k):
        if len(set(labels)) != n:
            continue
        slots = {b: [s for s, x in enumerate(labels) if x == b] for b in range(1, n + 1)}
        for orders in itertools.product(*(itertools.permutations(slots[b]) for b in range(1, n + 1))):
            partner = [[None] * k] + [[] for _ in range(n)]
            for b, order in zip(range(1, n + 1), orders):
                for j, s in enumerate(order):
                    partner[b].append((0, s))
                    partner[0][s] = (b, j)
            yield tuple(tuple(row) for row in partner)


def enumeration_estimate(n, max_arcs):
    return sum(n**k * math.factorial(k) for k in range(max(n, 1), max_arcs + 1))


def iter_graphs(
    n: int,
    max_arcs: int,
    *,
    min_arcs: int | None = None,
    genus: int | None = None,
    max_genus: int = 1,
    lgtree: bool = False,
    untwisted: bool = False,
    quasi_filling: bool = False,
    limit: int = 2_000_000,
) -> Iterator[ArcGraph]:
    """Yield every valid GTree graph with ``n`` inputs and at most ``max_arcs`` arcs.

    Genus is either fixed by ``genus`` or ranges over ``0..max_genus``.
    """
    estimate = enumeration_estimate(n, max_arcs)
    if estimate > limit:
        raise EnumerationTooLarge(estimate, limit)
    if n == 0:
        for g in range(genus if genus is not None else 0, (genus if genus is not None else max_genus) + 1):
            if not quasi_filling or g == 0:
                yield ArcGraph.empty(g)
        return
    genera = [genus] if genus is not None else list(range(max_genus + 1))
    r = n + 1
    for k in range(max(n, min_arcs or 0), max_arcs + 1):
        for partner in _pairings(n, k):
            if lgtree and not all(
                all(x[1] > y[1] for x, y in zip(partner[b], partner[b][1:])) for b in range(1, r)
            ):
                continue
            orbits = _orbits(partner)
            f = len(orbits)
            partitions = [[[o] for o in range(f)]] if quasi_filling else _set_partitions(list(range(f)))
            for part in partitions:
                regions = len(part)
                region_of = [0] * f
                for ri, block in enumerate(part):
                    for o in block:
                        region_of[o] = ri
                for g in genera:
                    twice = 2 * regions - f - 2 + 2 * g + r - k
                    if twice < 0 or twice % 2:
                        continue
                    if quasi_filling and (twice or regions != f):
                        continue
                    for gens in _compositions(twice // 2, regions):
                        graph = graph_from_partner(partner, region_of, gens)
                        if parallel_pairs(graph):
                            continue
                        if untwisted and not is_untwisted(graph):
                            continue
                        yield graph


def _graphs_with_arcs(args):
    n, k, filters = args
    return list(iter_graphs(n, k, min_arcs=k, **filters))


def enumerate_graphs(n, max_arcs, *, min_arcs=None, limit=2_000_000, **filters) -> list[ArcGraph]:
    """List form of :func:`iter_graphs`, sorted canonically and duplicate-free.

    Arc counts are handled in separate worker processes when the environment
    variable ``ARC_OP_THREADS`` asks for more than one.
    """
    from ._parallel import parallel_map

    estimate = enumeration_estimate(n, max_arcs)
    if estimate > limit:
        raise EnumerationTooLarge(estimate, limit)
    lo = max(n, min_arcs or 0, 1) if n else 0
    if n == 0:
        found = list(iter_graphs(0, max_arcs, limit=limit, **filters))
    else:
        jobs = [(n, k, dict(filters, limit=limit)) for k in range(lo, max_arcs + 1)]
        found = [g for part in parallel_map(_graphs_with_arcs, jobs) for g in part]
    return sorted(set(found), key=lambda g: (g.arc_count, g.partner, g.corner_region, g.region_genus))
