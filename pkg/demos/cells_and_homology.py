"""
Cells, boundaries and homology
==============================

Arc graphs index the cells of a chain complex. Erasing an arc gives a face.
This script checks the boundary of the cup cells, builds the iterated cup-one
chains and computes homology with exact integer elimination.
"""

from arcop.arcgraph import seq
from arcop.cells import boundary, chain_compose, coinvariant_reduce, cup, dl_class, homology, tau
from arcop.kgraph import filtration_level, k_label

# the cup cells alternate between the two inputs
for i in range(4):
    c = cup(i)
    print(i, seq(c.graph), c.dim, [(seq(f.graph), k) for f, k in boundary(c, stabilized=True)])

# the boundary of cup one is the commutator of the product
print(boundary(cup(1), True))

# cup(i) and its transpose sit in filtration stage i + 1
print([filtration_level(cup(i)) for i in range(4)], filtration_level(tau(cup(3))))
print(k_label(chain_compose(cup(1), 2, cup(2), True).terms.popitem()[0]))

# two cells per dimension make a contractible complex
print(homology("stlgtree2", 6))
# the filtration stages are spheres
for n in range(1, 5):
    print(n, homology("stlgtree2_filtration", filtration=n))
print(homology("stlgtree2", 4, "Zp-sign", p=2))

# left-iterated cup one: a hexagon whose edges cancel mod 3 after symmetrizing
d3 = dl_class(3)
for cell, coeff in d3:
    print(coeff, seq(cell.graph))
print(len(boundary(d3, True)), coinvariant_reduce(boundary(d3, True), 3))
