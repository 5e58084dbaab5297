import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import lattices_upto
from latkit.constructors import boolean, chain, fixture, free_distributive, linear_sum, product, two_by_z_window
from latkit.core import is_isomorphic
from latkit.predicates import (
    doubly_reducible,
    find_m3,
    find_n5,
    is_distributive,
    is_modular,
    is_semidistributive_join,
    is_semidistributive_meet,
    join_reducible,
    linear_decomposition,
    meet_reducible,
    reducible_antichain_bound,
    whitman,
    whitman_bruteforce,
    width,
)
from oracles import brute_linear_blocks, brute_width

small = st.sampled_from(lattices_upto(7))


def test_m3_and_n5():
    m3, n5 = fixture("m3"), fixture("n5")
    assert is_modular(m3) and not is_distributive(m3)
    assert not is_modular(n5) and not is_distributive(n5)
    assert find_m3(m3) is not None and find_n5(m3) is None
    assert find_n5(n5) is not None and find_m3(n5) is None


def test_distributivity_witness_is_a_real_failure():
    L = fixture("n5")
    c = is_distributive(L)
    assert not c and c.witness is not None
    x, y, z = c.witness
    assert L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))


@given(small)
def test_distributive_iff_no_m3_or_n5(L):
    assert bool(is_distributive(L)) == (find_m3(L) is None and find_n5(L) is None)


@given(small)
def test_modular_iff_no_n5(L):
    assert bool(is_modular(L)) == (find_n5(L) is None)


@given(small)
def test_whitman_agrees_with_bruteforce(L):
    fast, slow = whitman(L), whitman_bruteforce(L)
    assert bool(fast) == bool(slow)
    if not fast:
        x, y, u, v = fast.witness
        m, s = L.meet(x, y), L.join(u, v)
        assert L.leq(m, s)
        assert not (L.leq(x, s) or L.leq(y, s) or L.leq(m, u) or L.leq(m, v))


def test_whitman_examples():
    assert whitman(fixture("fl_1_2"))
    assert whitman(chain(5))
    assert whitman(boolean(2))
    assert whitman(boolean(3))
    assert not whitman(boolean(4))
    assert not whitman(product(boolean(2), chain(3)))
    assert whitman(fixture("n5"))
    assert whitman(fixture("m3"))
    assert not whitman(free_distributive(3))


def test_semidistributivity():
    m3, n5 = fixture("m3"), fixture("n5")
    assert not is_semidistributive_meet(m3) and not is_semidistributive_join(m3)
    assert is_semidistributive_meet(n5) and is_semidistributive_join(n5)


@given(small)
def test_distributive_implies_semidistributive(L):
    if is_distributive(L):
        assert is_semidistributive_meet(L) and is_semidistributive_join(L)


def test_reducibility_in_the_square_and_cube():
    B = boolean(2)
    assert join_reducible(B) == {3} and meet_reducible(B) == {0} and not doubly_reducible(B)
    L = product(chain(3), chain(3))
    assert doubly_reducible(L) == {L.index("(1,1)")}
    assert not doubly_reducible(boolean(3))
    assert len(doubly_reducible(boolean(4))) > 0


@pytest.mark.parametrize("L, w", [(chain(4), 1), (boolean(3), 3), (boolean(4), 6), (free_distributive(3), 4)])
def test_width_examples(L, w):
    assert width(L)[0] == w


@given(small)
def test_width_matches_bruteforce(L):
    w, A = width(L)
    assert w == brute_width(L) == len(A)
    assert all(not L.leq(a, b) for a in A for b in A if a != b)


def test_width_on_larger_lattices():
    rng = random.Random(7)
    pool = [chain(1), chain(2), boolean(2), boolean(3), product(chain(2), chain(3)), fixture("n5"), fixture("m3")]
    for _ in range(20):
        L = linear_sum(rng.sample(pool, 3))
        if L.n <= 12:
            assert width(L)[0] == brute_width(L)


@given(small)
def test_linear_decomposition_matches_cuts(L):
    assert linear_decomposition(L).sizes() == brute_linear_blocks(L)


def test_linear_decomposition_of_a_stack():
    L = linear_sum([chain(1), boolean(3), product(chain(2), chain(4))])
    D = linear_decomposition(L)
    assert D.sizes() == [1, 8, 8]
    B = D.block_lattices(L)
    assert is_isomorphic(B[1], boolean(3)) is not None
    assert is_isomorphic(B[2], product(chain(2), chain(4))) is not None


def test_chain_decomposes_into_points():
    assert linear_decomposition(chain(4)).sizes() == [1, 1, 1, 1]
    assert linear_decomposition(boolean(2)).indecomposable


def test_window_interior_reducible_antichain():
    W = two_by_z_window(-5, 5)
    size, A = reducible_antichain_bound(W.lattice, exclude=W.boundary)
    assert size == 2 and len(A) == 2
    assert reducible_antichain_bound(W.lattice)[0] == 2
