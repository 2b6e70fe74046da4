"""
Gluing weighted arc graphs
==========================

Compose twists, watch the Euler defect, and see why gaps are needed once
inputs can be capped off by discs.
"""

from fractions import Fraction as F

from arcop import io
from arcop.arcgraph import WeightedArcGraph, describe, euler_defect, from_sequence, seq
from arcop.glue import compose, fatten, surface, thick_compose, twist

# a twist is a cylinder with two arcs; the weights say how far the marked point turns
t = twist(F(1, 3))
print(describe(t.graph), t.weights)

# twists add up, modulo one full turn
print(compose(t, 1, twist(F(1, 4))).normalized().weights)
print(compose(twist(F(1, 2)), 1, twist(F(1, 2))).normalized())

# the product: one arc to each input
mu = WeightedArcGraph(from_sequence((1, 2)), (1, 1))
print(seq(compose(mu, 1, mu).graph))

# gluing never creates a positive Euler defect
print(euler_defect(compose(mu, 2, t).graph))

# capping input 2 with a disc and then twisting is not the same as twisting first
half = twist(F(1, 2))
left = compose(compose(half, 1, mu), 2, surface())
right = compose(half, 1, compose(mu, 2, surface()))
print(left.normalized() == right.normalized())

# with gaps the same computation is associative on the nose
a, b, c = fatten(half), fatten(mu), fatten(surface())
print(thick_compose(thick_compose(a, 1, b), 2, c) == thick_compose(a, 1, thick_compose(b, 2, c)))

# documents are plain JSON with exact rationals
print(io.dumps(thick_compose(b, 2, c)))
