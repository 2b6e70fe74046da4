"""
Tree cells acting on Hochschild cochains
========================================

Cochains are numpy object arrays of Fractions. A tree cell turns into a
combination of cup products and braces. An unstable cell also multiplies the
output by a power of the Euler element.
"""

from fractions import Fraction as F

import numpy as np

from arcop.arcgraph import WeightedArcGraph, from_sequence
from arcop.cells import sequence_cell
from arcop.frobenius import (
    Cochain,
    FrobeniusAlgebra,
    act,
    brace,
    element_cochain,
    euler_element,
    hochschild_differential,
    multiplication,
    product,
    tree_expression,
)
from arcop.stabilize import st, st_H

QQ = FrobeniusAlgebra.product([1, 1])
dual = FrobeniusAlgebra.quotient([0, 0], [0, 1])  # Q[x]/x^2 with trace picking the x coefficient
print(euler_element(QQ), euler_element(dual))

# the product is a Hochschild cocycle
print(hochschild_differential(dual, multiplication(dual)).is_zero())

# words read as tree operations
for w in [(1, 2), (1, 2, 1), (1, 2, 1, 3, 1), (1, 2, 3, 2, 1)]:
    print(w, tree_expression(w))

rng = np.random.default_rng(0)
f = Cochain(rng.integers(-2, 3, size=(2, 2, 2)).astype(object) * F(1))
g = Cochain(rng.integers(-2, 3, size=(2, 2)).astype(object) * F(1))
print(act(sequence_cell((1, 2, 1)), QQ, [f, g]) == brace(f, g))
print(act(sequence_cell((2, 1)), QQ, [f, g]) == product(QQ, g, f))

# add a hole to the product: over Q x Q nothing changes, over Q[x]/x^2 the unit becomes 2x
mu = WeightedArcGraph(from_sequence((1, 2)), (1, 1))
hole = st_H(F(1, 4), F(1, 2), mu)
for A in (QQ, dual):
    one = element_cochain(A.unit)
    print(act(hole, A, [one, one]).tensor, act(st(hole), A, [one, one]).tensor)
