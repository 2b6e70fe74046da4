"""Complete-graphs operad, pairwise projections and the E_n filtration of cells."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .arcgraph import WeightedArcGraph, from_sequence, seq
from .cells import Cell, cup, _uniform
from .glue import compose, degeneracy
from .stabilize import st


@dataclass(frozen=True)
class KElement:
    """A pair ``(mu, sigma)``: a natural number per pair of inputs and a linear order.

    ``sigma`` lists the inputs ``1..p`` in their order.
    """

    p: int
    mu: tuple[tuple[tuple[int, int], int], ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        pairs = {pair for pair, _ in self.mu}
        expected = set(itertools.combinations(range(1, self.p + 1), 2))
        if pairs != expected or len(self.mu) != len(expected):
            raise ValueError("mu must give one value for every pair i < j")
        if sorted(self.sigma) != list(range(1, self.p + 1)):
            raise ValueError("sigma must order the inputs 1..p")
        if any(v < 0 for _, v in self.mu):
            raise ValueError("mu takes natural values")
        object.__setattr__(self, "mu", tuple(sorted(self.mu)))

    @classmethod
    def make(cls, p: int, mu: Mapping[tuple[int, int], int], sigma: Sequence[int] | None = None):
        sigma = tuple(range(1, p + 1)) if sigma is None else tuple(sigma)
        return cls(p, tuple(mu.items()), sigma)

    def mu_of(self, i, j):
        if i > j:
            i, j = j, i
        return dict(self.mu)[(i, j)]

    def before(self, i, j) -> bool:
        return self.sigma.index(i) < self.sigma.index(j)


def k_identity() -> KElement:
    return KElement(1, (), (1,))


def k_compose(outer: KElement, inners: Sequence[KElement]) -> KElement:
    """Block composition: pairs inside a block keep the inner value, others take the outer one."""
    if len(inners) != outer.p:
        raise ValueError(f"{outer.p}-ary element needs {outer.p} inner elements, got {len(inners)}")
    offsets = [0]
    for x in inners:
        offsets.append(offsets[-1] + x.p)
    total = offsets[-1]
    block = {}
    for r, x in enumerate(inners):
        for a in range(1, x.p + 1):
            block[offsets[r] + a] = (r, a)
    mu = {}
    for i, j in itertools.combinations(range(1, total + 1), 2):
        (r, a), (s, b) = block[i], block[j]
        mu[(i, j)] = inners[r].mu_of(a, b) if r == s else outer.mu_of(r + 1, s + 1)
    sigma = []
    for r in outer.sigma:
        sigma += [offsets[r - 1] + a for a in inners[r - 1].sigma]
    return KElement.make(total, mu, sigma)


def k_phi_star(x: KElement, i: int, j: int) -> KElement:
    """Restriction to inputs ``i`` and ``j``, renamed ``1`` and ``2``."""
    if i == j:
        raise ValueError("projection needs two distinct inputs")
    sigma = (1, 2) if x.before(i, j) else (2, 1)
    return KElement.make(2, {(1, 2): x.mu_of(i, j)}, sigma)


def k_leq(a: KElement, b: KElement) -> bool:
    if a.p != b.p:
        raise ValueError("elements of different arity are not compared")
    for i, j in itertools.combinations(range(1, a.p + 1), 2):
        if k_phi_star(a, i, j) == k_phi_star(b, i, j):
            continue
        if a.mu_of(i, j) < b.mu_of(i, j):
            continue
        return False
    return True


def k_level(x: KElement) -> int:
    """Smallest ``n`` with ``x`` in the ``n``-th filtration stage."""
    return 1 + max((v for _, v in x.mu), default=0)


# -- cells -------------------------------------------------------------------------


def _representative(c):
    if isinstance(c, Cell):
        return WeightedArcGraph(c.graph, _uniform(c.graph))
    return c


def phi_star(x, i: int, j: int):
    """Projection onto inputs ``i`` and ``j``: cap all other inputs and stabilize."""
    if isinstance(x, KElement):
        return k_phi_star(x, i, j)
    if i == j:
        raise ValueError("projection needs two distinct inputs")
    alpha = _representative(x)
    n = alpha.arity
    for k in range(n, 0, -1):
        if k not in (i, j):
            alpha = degeneracy(alpha, k)
    if i > j:
        from .glue import relabel_weighted

        alpha = relabel_weighted(alpha, (2, 1))
    return Cell(st(alpha).graph)


def projection_order(cell: Cell) -> tuple[int, int]:
    """``(1, 2)`` when the projected cell is a cup cell, ``(2, 1)`` for its transpose."""
    return (1, 2) if seq(cell.graph)[0] == 1 else (2, 1)


def filtration_level(x) -> int:
    """``1 +`` the largest dimension of a pairwise projection (1 below arity two)."""
    n = x.arity
    dims = [phi_star(x, i, j).dim for i, j in itertools.combinations(range(1, n + 1), 2)]
    return 1 + max(dims, default=0)


def k_label(x) -> KElement:
    """The element of K recording each pairwise projection of a cell."""
    n = x.arity
    mu = {}
    before = {}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        c = phi_star(x, i, j)
        mu[(i, j)] = c.dim
        before[(i, j)] = projection_order(c) == (1, 2)
    sigma = sorted(range(1, n + 1), key=_order_key(before))
    return KElement.make(n, mu, sigma)


def _order_key(before):
    import functools

    def cmp(a, b):
        if a == b:
            return 0
        if a < b:
            return -1 if before[(a, b)] else 1
        return 1 if before[(b, a)] else -1

    return functools.cmp_to_key(cmp)


def cup_prime(n: int) -> WeightedArcGraph:
    """``cup_n`` with equal weights summing to one at each input."""
    c = cup(n)
    return WeightedArcGraph(c.graph, _uniform(c.graph))


def ordered_point(p: int, n: int) -> WeightedArcGraph:
    """Iterated gluing of ``cup_n`` into the last input, ``p`` inputs in total."""
    if p < 2:
        raise ValueError("ordered points need p >= 2")
    alpha = cup_prime(n)
    for k in range(2, p):
        alpha = compose(alpha, k, cup_prime(n))
    return alpha


def ms_complexity(s: Sequence[int]) -> int:
    """Largest number of alternations of a two-letter restriction (1 below two letters)."""
    letters = sorted(set(s))
    best = 1 if len(letters) < 2 else 0
    for a, b in itertools.combinations(letters, 2):
        r = [x for x in s if x in (a, b)]
        collapsed = [x for n, x in enumerate(r) if n == 0 or r[n - 1] != x]
        best = max(best, len(collapsed) - 1)
    return best


def sequence_cells(n: int, max_len: int):
    """Stabilized LGTree cells: surjective sequences without equal neighbours."""
    out = []
    for length in range(n, max_len + 1):
        for s in itertools.product(range(1, n + 1), repeat=length):
            if len(set(s)) != n or any(a == b for a, b in zip(s, s[1:])):
                continue
            out.append(Cell(from_sequence(s)))
    return out
