import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_aut_order
from triplepoints.automorphisms import automorphisms, iter_automorphisms, refine_classes
from triplepoints.datasets import builtin
from triplepoints.errors import CapExceeded
from triplepoints.incidence import IncidenceStructure


def is_automorphism(inc, g):
    return inc.relabel(g) == inc


def closure_order(n, gens):
    """Size of the group generated by ``gens``, by breadth-first closure."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                c = tuple(g[h[i]] for i in range(n))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("name,order", [("fano", 168), ("dual_hesse", 432), ("pappus", 108), ("non_pappus", 12)])
def test_orders_against_brute_force(name, order):
    inc = builtin(name)
    assert brute_force_aut_order(inc.n, inc.blocks) == order
    assert automorphisms(inc).order == order


@pytest.mark.parametrize(
    "name,order",
    [("pg:3,2", 20160), ("sporadic19", 57), ("sts13_1", 6), ("sts13_2", 39), ("matroid16_37", 12)],
)
def test_orders_against_generated_group(name, order):
    inc = builtin(name)
    rep = automorphisms(inc)
    assert rep.order == order
    assert all(is_automorphism(inc, g) for g in rep.generators)
    assert closure_order(inc.n, rep.generators) == order


def test_pg32_order_formula():
    # |GL_4(F_2)| = (16-1)(16-2)(16-4)(16-8)
    assert automorphisms(builtin("pg:3,2")).order == 15 * 14 * 12 * 8


def test_sporadic_transitive_on_blocks():
    rep = automorphisms(builtin("sporadic19"))
    assert rep.transitive_on_blocks
    assert [len(o) for o in rep.block_orbits] == [57]


def test_sts13_1_not_transitive():
    assert not automorphisms(builtin("sts13_1")).transitive_on_blocks


def test_iter_automorphisms_enumerates_group():
    inc = builtin("dual_hesse")
    perms = list(iter_automorphisms(inc))
    assert len(perms) == len(set(perms)) == 432
    assert all(is_automorphism(inc, g) for g in perms)


def test_cap():
    with pytest.raises(CapExceeded):
        automorphisms(builtin("pg:3,2"), cap=10)


def test_refinement_is_invariant():
    # refinement colours are constant on orbits
    inc = builtin("sts13_1")
    cls = refine_classes(inc)
    for g in automorphisms(inc).generators:
        assert all(cls[i] == cls[g[i]] for i in range(inc.n))


@st.composite
def small_structures(draw):
    n = draw(st.integers(3, 7))
    fam = []
    for t in draw(st.lists(st.sampled_from(list(itertools.combinations(range(n), 3))), max_size=7)):
        if all(len(set(t) & set(b)) <= 1 for b in fam):
            fam.append(t)
    return IncidenceStructure(n, fam)


@settings(max_examples=60, deadline=None)
@given(small_structures())
def test_random_orders_against_brute_force(inc):
    assert automorphisms(inc).order == brute_force_aut_order(inc.n, inc.blocks)
