import random
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import lattices_upto
from latkit.congruence import (
    Congruence,
    NotDistributiveTarget,
    all_congruences,
    congruence_join,
    extend_homomorphism,
    generated_congruence,
    hom_from_generators,
    homomorphism_violation,
    identity_congruence,
    kernel,
    principal_congruence,
    quotient,
    total_congruence,
)
from latkit.constructors import boolean, chain, fixture, free_distributive
from latkit.core import is_isomorphic
from latkit.errors import NotAHomomorphism
from oracles import naive_congruence_closure, smallest_congruence_containing

small = st.sampled_from(lattices_upto(6))


def _classes(c):
    return sorted(sorted(x) for x in c.classes)


def test_trivial_principal_congruences():
    L = boolean(3)
    assert len(principal_congruence(L, L.bottom, L.top)) == 1
    assert principal_congruence(L, 3, 3) == identity_congruence(L)


@given(small, st.data())
def test_principal_matches_enumerated_congruences(L, data):
    a = data.draw(st.integers(0, L.n - 1))
    b = data.draw(st.integers(0, L.n - 1))
    theta = principal_congruence(L, a, b)
    ref = smallest_congruence_containing(L, all_congruences(L), a, b)
    assert theta == ref


@given(small, st.data())
def test_generated_matches_naive_closure(L, data):
    pairs = data.draw(st.lists(st.tuples(st.integers(0, L.n - 1), st.integers(0, L.n - 1)), max_size=3))
    theta = generated_congruence(L, pairs)
    assert _classes(theta) == sorted(sorted(c) for c in naive_congruence_closure(L, pairs))


@given(small, st.data())
def test_classes_are_convex_sublattices(L, data):
    a, b = data.draw(st.integers(0, L.n - 1)), data.draw(st.integers(0, L.n - 1))
    for cls in principal_congruence(L, a, b).classes:
        s = set(cls)
        assert all(L.join(x, y) in s and L.meet(x, y) in s for x in s for y in s)
        assert all(z in s for x in s for y in s for z in range(L.n) if L.leq(x, z) and L.leq(z, y))


@given(small, st.data())
def test_quotient_projection_is_a_surjective_homomorphism(L, data):
    a, b = data.draw(st.integers(0, L.n - 1)), data.draw(st.integers(0, L.n - 1))
    theta = principal_congruence(L, a, b)
    Q, proj = quotient(L, theta)
    assert Q.n == len(theta)
    assert set(proj) == set(range(Q.n))
    assert homomorphism_violation(L, Q, proj) is None
    assert kernel(L, Q, proj) == theta


def test_quotient_extremes():
    L = fixture("n5")
    Q, _ = quotient(L, identity_congruence(L))
    assert is_isomorphic(Q, L) is not None
    assert quotient(L, total_congruence(L))[0].n == 1


def test_congruence_join_properties():
    F = free_distributive(3)
    rng = random.Random(3)
    for _ in range(10):
        c1 = principal_congruence(F, rng.randrange(F.n), rng.randrange(F.n))
        c2 = principal_congruence(F, rng.randrange(F.n), rng.randrange(F.n))
        j = congruence_join(c1, c2)
        assert j == congruence_join(c2, c1)
        assert c1 <= j and c2 <= j
        assert congruence_join(c1, identity_congruence(F)) == c1


def test_incompatible_partition_rejected():
    L = chain(3)
    with pytest.raises(ValueError):
        Congruence.from_classes(L, [[0, 2], [1]])


def test_kernel_rejects_non_homomorphism():
    with pytest.raises(NotAHomomorphism):
        kernel(boolean(2), chain(2), (0, 1, 1, 0))


def test_fd3_pipeline_class_counts():
    F = free_distributive(3)
    e = F.element
    z = e("(a^b) v (a^c) v (b^c)")
    first = principal_congruence(F, z, e("(a^b) v (a^c)"))
    second = congruence_join(first, principal_congruence(F, z, e("(a^c) v (b^c)")))
    third = congruence_join(second, principal_congruence(F, e("b v (a^c)"), e("b")))
    sizes = [len(first), len(second), len(third)]
    oracle = [
        len(naive_congruence_closure(F, [(z, e("(a^b) v (a^c)"))])),
        len(naive_congruence_closure(F, [(z, e("(a^b) v (a^c)")), (z, e("(a^c) v (b^c)"))])),
        len(naive_congruence_closure(F, [(z, e("(a^b) v (a^c)")), (z, e("(a^c) v (b^c)")),
                                         (e("b v (a^c)"), e("b"))])),
    ]
    assert sizes == oracle == [13, 10, 8]
    for c, name in zip((first, second, third), ("fig2_left", "fig2_middle", "fig2_right")):
        assert is_isomorphic(quotient(F, c)[0], fixture(name)) is not None
    assert is_isomorphic(quotient(F, third)[0], boolean(3)) is not None


def test_hom_from_generators():
    F = free_distributive(3)
    assert hom_from_generators(F, F, ["a", "b", "c"]) == tuple(range(F.n))
    B = boolean(3)
    f = hom_from_generators(F, B, ["a1", "a2", "a3"])
    assert len(set(f)) == 8 and homomorphism_violation(F, B, f) is None
    C = chain(4)
    g = hom_from_generators(F, C, [1, 2, 3])
    assert homomorphism_violation(F, C, g) is None


def test_hom_into_non_distributive_target_warns():
    F = free_distributive(3)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        hom_from_generators(F, fixture("m3"), [1, 2, 3])
    assert any(issubclass(w.category, NotDistributiveTarget) for w in caught)


def test_extend_homomorphism_from_generators():
    F = fixture("fl_1_2")
    gens = F.generators
    f = extend_homomorphism(F, F, {i: i for i in gens.values()})
    assert f == tuple(range(F.n))
