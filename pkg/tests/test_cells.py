import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcop.arcgraph import from_sequence, seq
from arcop.cells import (
    Cell,
    Chain,
    act_perm,
    boundary,
    cells,
    chain_compose,
    coinvariant_reduce,
    corolla,
    cup,
    dl_class,
    homology,
    koszul_sign,
    perm_sign,
    permute,
    sequence_cell,
    tau,
)


def _seqs(chain):
    return {seq(c.graph): x for c, x in chain}


def test_cup_dimensions():
    for i in range(6):
        assert cup(i).dim == i
        assert tau(cup(i)).dim == i
        assert tau(tau(cup(i))) == cup(i)
    assert corolla(3).dim == 0 and seq(corolla(3).graph) == (1, 2, 3)


def test_boundary_of_cup_one_is_commutator():
    assert _seqs(boundary(cup(1), True)) == {(1, 2): 1, (2, 1): -1}


def test_boundary_of_cup_two():
    assert _seqs(boundary(cup(2), True)) == {(1, 2, 1): -1, (2, 1, 2): -1}


def test_product_is_associative_on_cells():
    mu = corolla(2)
    assert chain_compose(mu, 1, mu, True) == Chain({corolla(3): 1})
    assert chain_compose(mu, 2, mu, True) == Chain({corolla(3): 1})


def test_iterated_cup_one():
    assert _seqs(chain_compose(cup(1), 2, cup(1), True)) == {(1, 2, 3, 2, 1): 1}
    assert _seqs(chain_compose(cup(1), 1, cup(1), True)) == {
        (1, 2, 3, 2, 1): -1,
        (1, 2, 1, 3, 1): 1,
        (1, 3, 1, 2, 1): -1,
    }
    assert dl_class(3) == chain_compose(cup(1), 1, cup(1), True)
    assert dl_class(2) == Chain({cup(1): 1})


def test_coinvariants_kill_the_boundary():
    for p in (2, 3):
        assert not coinvariant_reduce(boundary(dl_class(p), True), p)
        assert coinvariant_reduce(dl_class(p), p)


def test_signs():
    assert perm_sign((1, 2, 3)) == 1 and perm_sign((2, 1, 3)) == -1 and perm_sign((2, 3, 1)) == 1
    assert koszul_sign((1, 1), (2, 1)) == -1
    assert koszul_sign((1, 2), (2, 1)) == 1
    assert koszul_sign((0, 5), (2, 1)) == 1


def test_chain_arithmetic():
    a = Chain({cup(1): 2, tau(cup(1)): 1})
    assert a - a == Chain()
    assert not (a - a)
    assert (a * 3)[cup(1)] == 6
    m = Chain({cup(1): 2}, modulus=3)
    assert (m + m)[cup(1)] == 1
    assert not (m * 3)


_STAB = cells(2, 5, stabilized=True, max_genus=2) + cells(3, 5, stabilized=True, max_genus=1)
_UNSTAB = cells(2, 4, max_genus=1)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(_STAB), st.booleans())
def test_boundary_squares_to_zero(cell, stab):
    assert not boundary(boundary(cell, stab), stab)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(_STAB + _UNSTAB), st.data())
def test_boundary_is_equivariant(cell, data):
    stab = cell in _STAB
    perm = tuple(data.draw(st.permutations(range(1, cell.arity + 1))))
    lhs = boundary(permute(Chain({cell: 1}), perm), stab)
    rhs = permute(boundary(cell, stab), perm)
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([c for c in _UNSTAB if c.graph.arc_count <= 3]), st.sampled_from(_UNSTAB), st.data())
def test_leibniz(a, b, data):
    if a.graph.arc_count + b.graph.arc_count > 6:
        return
    i = data.draw(st.integers(1, a.arity))
    lhs = boundary(chain_compose(a, i, b))
    rhs = chain_compose(boundary(a), i, b) + chain_compose(a, i, boundary(b)) * (-1) ** a.dim
    assert lhs == rhs


def test_action_of_the_symmetric_group_composes():
    c = sequence_cell((1, 2, 3, 1))
    for p, q in itertools.product(itertools.permutations((1, 2, 3)), repeat=2):
        pq = tuple(p[q[k] - 1] for k in range(3))
        once = permute(Chain({c: 1}), pq)
        twice = permute(permute(Chain({c: 1}), q), p)
        assert once == twice


def test_homology_groups():
    assert homology("stlgtree2", 4) == ["Z", "0", "0", "0"]
    assert homology("stlgtree2_filtration", filtration=3) == ["Z", "0", "Z"]
    assert homology("stlgtree2", 3, "Zp-sign", p=2) == ["Z/2"] * 3
    with pytest.raises(ValueError):
        homology("nowhere", 3)
    with pytest.raises(ValueError):
        homology("stlgtree2", 3, "Zp-sign", p=4)


def test_cell_rejects_parallel_arcs():
    with pytest.raises(ValueError):
        Cell(from_sequence((1, 1)))


def _block(sizes, perm):
    """Permutation of the composite's inputs induced by permuting the outer ones."""
    new_sizes = [0] * len(sizes)
    for r, s in enumerate(sizes):
        new_sizes[perm[r] - 1] = s
    starts = [sum(new_sizes[:r]) for r in range(len(sizes))]
    out = []
    for r, s in enumerate(sizes):
        out += [starts[perm[r] - 1] + a + 1 for a in range(s)]
    return tuple(out)


def test_chain_compose_is_associative():
    small = [c for n in (1, 2) for c in cells(n, 3, stabilized=True, max_genus=1)]
    for a, b, c in itertools.product(small, repeat=3):
        if a.arity + b.arity + c.arity - 2 > 3 or a.graph.arc_count + b.graph.arc_count + c.graph.arc_count > 6:
            continue
        for i in range(1, a.arity + 1):
            for j in range(1, b.arity + 1):
                left = chain_compose(chain_compose(a, i, b, True), i + j - 1, c, True)
                assert left == chain_compose(a, i, chain_compose(b, j, c, True), True)


def test_chain_compose_is_equivariant():
    cs = [c for n in (1, 2, 3) for c in cells(n, 4, stabilized=True, max_genus=1)]
    for a in cs:
        for b in cs:
            if a.arity < 2 or a.arity + b.arity - 1 > 3 or a.graph.arc_count + b.graph.arc_count > 5:
                continue
            for i in range(1, a.arity + 1):
                for perm in itertools.permutations(range(1, a.arity + 1)):
                    left = chain_compose(permute(Chain({a: 1}), perm), perm[i - 1], b, True)
                    sizes = [b.arity if k == i else 1 for k in range(1, a.arity + 1)]
                    assert left == permute(chain_compose(a, i, b, True), _block(sizes, perm))


_TINY = [c for n in (1, 2) for c in cells(n, 3, max_genus=1)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(_TINY), st.sampled_from(_TINY), st.sampled_from(_TINY), st.data())
def test_unstable_chain_compose_is_associative(a, b, c, data):
    if a.arity + b.arity + c.arity - 2 > 3 or a.graph.arc_count + b.graph.arc_count + c.graph.arc_count > 6:
        return
    i, j = data.draw(st.integers(1, a.arity)), data.draw(st.integers(1, b.arity))
    left = chain_compose(chain_compose(a, i, b), i + j - 1, c)
    assert left == chain_compose(a, i, chain_compose(b, j, c))
