"""
Stabilizing away genus and extra boundary
=========================================

Regions with genus or several boundary cycles carry a negative Euler defect.
Stabilization forgets them and keeps only a quasi-filling graph.
"""

from fractions import Fraction as F

from arcop.arcgraph import WeightedArcGraph, ambient_genus, euler_defect, from_sequence, is_quasi_filling
from arcop.io import export_dot
from arcop.stabilize import G, H, decompose_unstable, st, st_G, st_H

# the two generators: a handle (defect -2) and an extra boundary cycle (defect -1)
for name, x in [("G", G()), ("H", H(F(1, 3)))]:
    print(name, euler_defect(x.graph), ambient_genus(x.graph))

mu = WeightedArcGraph(from_sequence((1, 2)), (1, 2))

# glue a handle and a hole into the product
x = st_G(F(1, 7), st_H(F(2, 9), F(1, 2), mu))
print(euler_defect(x.graph), ambient_genus(x.graph))
print(decompose_unstable(x)[:2])

# stabilization gives back the product
s = st(x)
print(is_quasi_filling(s.graph), s == st(mu))

# dual graph, ready for graphviz
print(export_dot(x.graph))
