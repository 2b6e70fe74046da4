"""Commutative Frobenius algebras and the tree-cell action on Hochschild cochains.

All coefficients are exact rationals held in numpy object arrays.  A cochain
of arity ``m`` is a tensor of shape ``(d,) * (m + 1)``: the first ``m`` axes
index basis inputs and the last one the output coordinate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from .arcgraph import WeightedArcGraph, euler_defect, is_lgtree, is_quasi_filling, seq
from .errors import UnsupportedCellError


def _frac_array(x, shape=None):
    arr = np.empty(np.shape(x), dtype=object)
    for idx in np.ndindex(arr.shape):
        arr[idx] = Fraction(np.asarray(x, dtype=object)[idx])
    if shape is not None and arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    return arr


def _zeros(shape):
    arr = np.empty(shape, dtype=object)
    arr.fill(Fraction(0))
    return arr


def _to_sympy(mat):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in mat])


def _to_fraction(x):
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    """``mult[i, j, k]`` is the coefficient of ``b_k`` in ``b_i b_j``."""

    mult: np.ndarray
    trace: np.ndarray
    basis: tuple[str, ...] = ()
    unit: np.ndarray = field(default=None)

    def __post_init__(self):
        mult = _frac_array(self.mult)
        d = mult.shape[0]
        if mult.shape != (d, d, d):
            raise ValueError("structure constants must have shape (d, d, d)")
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "trace", _frac_array(self.trace, (d,)))
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"b{i}" for i in range(d)))
        if len(self.basis) != d:
            raise ValueError("one label per basis vector is required")
        if not all(mult[i, j, k] == mult[j, i, k] for i, j, k in np.ndindex(mult.shape)):
            raise ValueError("multiplication is not commutative")
        left = np.tensordot(mult, mult, axes=([2], [0]))
        right = np.tensordot(mult, mult, axes=([2], [1])).transpose(2, 0, 1, 3)
        if not np.array_equal(left, right):
            raise ValueError("multiplication is not associative")
        unit = self.unit if self.unit is not None else self._solve_unit()
        unit = _frac_array(unit, (d,))
        if not np.array_equal(np.tensordot(unit, mult, axes=([0], [0])), np.eye(d, dtype=object) * Fraction(1)):
            raise ValueError("the given unit is not a unit")
        object.__setattr__(self, "unit", unit)
        if _to_sympy(self.pairing).det() == 0:
            raise ValueError("trace pairing is degenerate")

    @property
    def dim(self):
        return self.mult.shape[0]

    def _solve_unit(self):
        d = self.mult.shape[0]
        # u_i mult[i, j, k] = delta_jk
        rows = [[self.mult[i, j, k] for i in range(d)] for j in range(d) for k in range(d)]
        rhs = [Fraction(int(j == k)) for j in range(d) for k in range(d)]
        sol = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
        try:
            u, params = sol.gauss_jordan_solve(sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in rhs]))
        except ValueError as exc:
            raise ValueError("algebra has no unit") from exc
        u = u.subs({t: 0 for t in params})
        return [_to_fraction(x) for x in u]

    @property
    def pairing(self):
        return np.tensordot(self.mult, self.trace, axes=([2], [0]))

    def multiply(self, x, y):
        return np.tensordot(np.tensordot(x, self.mult, axes=([0], [0])), y, axes=([0], [0]))

    def power(self, x, n):
        out = self.unit.copy()
        for _ in range(n):
            out = self.multiply(out, x)
        return out

    def element(self, coeffs):
        return _frac_array(coeffs, (self.dim,))

    @classmethod
    def quotient(cls, coeffs: Sequence, trace: Sequence, names=None):
        """``Q[x] / (x^d + c_{d-1} x^{d-1} + ... + c_0)`` in the basis ``1, x, ..., x^{d-1}``.

        ``coeffs`` lists ``c_0 .. c_{d-1}``.
        """
        c = [Fraction(x) for x in coeffs]
        d = len(c)
        # powers x^0 .. x^{2d-2} reduced to the basis
        powers = []
        for n in range(2 * d - 1):
            if n < d:
                v = [Fraction(0)] * d
                v[n] = Fraction(1)
            else:
                prev = powers[-1]
                v = [Fraction(0)] + prev[:-1]
                top = prev[-1]
                v = [v[k] - top * c[k] for k in range(d)]
            powers.append(v)
        mult = [[powers[i + j] for j in range(d)] for i in range(d)]
        names = names or tuple("1" if n == 0 else ("x" if n == 1 else f"x^{n}") for n in range(d))
        unit = [Fraction(int(k == 0)) for k in range(d)]
        return cls(np.array(mult, dtype=object), np.array(trace, dtype=object), tuple(names), np.array(unit, dtype=object))

    @classmethod
    def product(cls, traces: Sequence):
        """Copies of ``Q`` with idempotent basis ``e_i`` and ``trace(e_i) = traces[i]``."""
        d = len(traces)
        mult = _zeros((d, d, d))
        for i in range(d):
            mult[i, i, i] = Fraction(1)
        return cls(mult, np.array(traces, dtype=object), tuple(f"e{i + 1}" for i in range(d)))

    def change_basis(self, P):
        """Same algebra in the basis whose ``i``-th vector has coordinates ``P[i]``."""
        P = _frac_array(P)
        Pinv = np.array(
            [[_to_fraction(x) for x in row] for row in _to_sympy(P).inv().tolist()], dtype=object
        )
        mult = np.einsum("ia,jb,abc,ck->ijk", P, P, self.mult, Pinv)
        trace = np.tensordot(P, self.trace, axes=([1], [0]))
        unit = np.tensordot(self.unit, Pinv, axes=([0], [0]))
        return FrobeniusAlgebra(mult, trace, unit=unit)


def euler_element(A: FrobeniusAlgebra):
    """``e = mu Delta(1) = sum g^{ij} b_i b_j`` with ``g^{ij}`` the inverse pairing."""
    inv = _to_sympy(A.pairing).inv()
    ginv = np.array([[_to_fraction(x) for x in row] for row in inv.tolist()], dtype=object)
    return np.tensordot(ginv, A.mult, axes=([0, 1], [0, 1]))


def descends(A: FrobeniusAlgebra) -> bool:
    return bool(np.array_equal(euler_element(A), A.unit))


# -- cochains ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cochain:
    tensor: np.ndarray

    @property
    def arity(self):
        return self.tensor.ndim - 1

    @property
    def dim(self):
        return self.tensor.shape[-1]

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.tensor.shape == other.tensor.shape and np.array_equal(
            self.tensor, other.tensor
        )

    def __add__(self, other):
        return Cochain(self.tensor + other.tensor)

    def __sub__(self, other):
        return Cochain(self.tensor - other.tensor)

    def __neg__(self):
        return Cochain(-self.tensor)

    def __mul__(self, k):
        return Cochain(self.tensor * Fraction(k))

    __rmul__ = __mul__

    def is_zero(self):
        return all(x == 0 for x in self.tensor.flat)

    def __call__(self, *args):
        out = self.tensor
        for a in args:
            out = np.tensordot(a, out, axes=([0], [0]))
        return out


def multiplication(A: FrobeniusAlgebra) -> Cochain:
    return Cochain(A.mult.copy())


def identity_cochain(A: FrobeniusAlgebra) -> Cochain:
    return Cochain(np.eye(A.dim, dtype=object) * Fraction(1))


def element_cochain(x) -> Cochain:
    return Cochain(_frac_array(x))


def insert(f: Cochain, k: int, g: Cochain) -> Cochain:
    """``f o_k g``: feed the output of ``g`` into input ``k`` (1-based) of ``f``."""
    m, n = f.arity, g.arity
    if not 1 <= k <= m:
        raise ValueError(f"no input {k} on a cochain of arity {m}")
    t = np.tensordot(g.tensor, f.tensor, axes=([n], [k - 1]))
    # axes now: g inputs, f inputs except k, f output
    order = list(range(n, n + k - 1)) + list(range(n)) + list(range(n + k - 1, n + m))
    return Cochain(np.transpose(t, order))


def _check(A, *fs):
    for f in fs:
        if f.dim != A.dim:
            raise ValueError("cochain and algebra dimensions differ")


def hochschild_differential(A: FrobeniusAlgebra, f: Cochain) -> Cochain:
    _check(A, f)
    m = f.arity
    mu = multiplication(A)
    out = insert(mu, 2, f)
    for k in range(1, m + 1):
        out = out + insert(f, k, mu) * (-1) ** k
    return out + insert(mu, 1, f) * (-1) ** (m + 1)


def product(A: FrobeniusAlgebra, f: Cochain, g: Cochain) -> Cochain:
    """Cup product ``(f g)(a_1..a_{r+s}) = f(a_1..a_r) g(a_{r+1}..a_{r+s})``."""
    _check(A, f, g)
    return insert(insert(multiplication(A), 2, g), 1, f)


def brace(f: Cochain, *gs: Cochain) -> Cochain:
    """``f{g_1, ..., g_r}``: all order-preserving insertions into distinct inputs.

    The insertion of ``g_l`` after ``i_l`` inputs of the result carries the sign
    ``(-1)^((|g_l| - 1) i_l)``.
    """
    r = len(gs)
    if r == 0:
        return f
    m = f.arity
    out = None
    for slots in itertools.combinations(range(1, m + 1), r):
        term = f
        for slot, g in sorted(zip(slots, gs), key=lambda t: -t[0]):
            term = insert(term, slot, g)
        exp = 0
        for l, (slot, g) in enumerate(zip(slots, gs)):
            before = (slot - 1 - l) + sum(h.arity for h in gs[:l])
            exp += (g.arity - 1) * before
        term = term * (-1) ** exp
        out = term if out is None else out + term
    if out is None:
        shape = (f.dim,) * (m - r + sum(g.arity for g in gs) + 1)
        return Cochain(_zeros(shape))
    return out


def scale_output(A: FrobeniusAlgebra, x, f: Cochain) -> Cochain:
    """Multiply every value of ``f`` by the algebra element ``x``."""
    return insert(Cochain(np.tensordot(x, A.mult, axes=([0], [0]))), 1, f)


# -- action of tree cells -------------------------------------------------------------


def _blocks(word):
    """Split a word into maximal pieces with pairwise disjoint letters."""
    out = []
    start = 0
    while start < len(word):
        end = start
        n = start
        while n <= end:
            end = max(end, max(p for p, x in enumerate(word) if x == word[n]))
            n += 1
        out.append(word[start : end + 1])
        start = end + 1
    return out


def tree_expression(word) -> str:
    """Brace/product expression of a tree-type sequence, e.g. ``f1{f2}f3``."""

    def op(w):
        return "".join(block(b) for b in _blocks(w))

    def block(b):
        k = b[0]
        parts = _split(b)
        if not parts:
            return f"f{k}"
        return f"f{k}{{" + ",".join(op(p) for p in parts) + "}"

    return op(tuple(word))


def _split(b):
    k = b[0]
    if b[-1] != k:
        raise UnsupportedCellError(f"sequence {b} is not of tree type")
    parts, cur = [], []
    for x in b[1:]:
        if x == k:
            parts.append(tuple(cur))
            cur = []
        else:
            cur.append(x)
    letters = [set(p) for p in parts]
    for a, c in itertools.combinations(letters, 2):
        if a & c:
            raise UnsupportedCellError(f"sequence {b} is not of tree type")
    if any(not p for p in parts):
        raise UnsupportedCellError(f"sequence {b} repeats a letter")
    return parts


def act_tree(A: FrobeniusAlgebra, word, fs: Sequence[Cochain]) -> Cochain:
    """Evaluate the brace/product expression of a tree-type sequence."""

    def op(w):
        out = None
        for b in _blocks(w):
            x = block(b)
            out = x if out is None else product(A, out, x)
        return out

    def block(b):
        k = b[0]
        return brace(fs[k - 1], *(op(p) for p in _split(b)))

    return op(tuple(word))


def act(alpha, A: FrobeniusAlgebra, fs: Sequence[Cochain]) -> Cochain:
    """Action of a GTree element on cochains: ``e^{-eps}`` times its stable tree operation."""
    from .cells import Cell
    from .stabilize import st_graph

    graph = alpha.graph
    if len(fs) != graph.arity:
        raise ValueError(f"{graph.arity} inputs expected, got {len(fs)}")
    stable = st_graph(graph)
    if not (is_lgtree(stable) and is_quasi_filling(stable)):
        raise UnsupportedCellError("only linearly ordered tree cells act")
    out = act_tree(A, seq(stable), fs)
    eps = euler_defect(graph)
    if eps:
        out = scale_output(A, A.power(euler_element(A), -eps), out)
    return out
