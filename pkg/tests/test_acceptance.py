"""Acceptance criteria, one test each.  The terminal summary prints a
PASS/FAIL line per criterion together with its wall time."""

import json
import random
import subprocess
import sys

import pytest

from corpus import distributive_from_all, distributive_upto, lattices, lattices_upto
from latkit.congruence import congruence_join, extend_homomorphism, principal_congruence, quotient
from latkit.constructors import (
    ImplicitTwoByZ,
    boolean,
    chain,
    fixture,
    free_distributive,
    linear_sum,
    product,
    product_chains,
    two_by_z_window,
)
from latkit.core import is_isomorphic
from latkit.doubling import DoublingSpec, convexity_violation, day_double, is_bounded, undouble_search, whitman_doubling_guard
from latkit.gj import find_gadgets, theorem2_decompose
from latkit.io import dumps, lattice_from_document
from latkit.predicates import doubly_reducible, is_distributive, linear_decomposition, reducible_antichain_bound, whitman, width
from latkit.spanning import (
    check_theorem6_conclusion,
    identity_embedding,
    two_by_z_canonical,
    verify_spanning_pair,
    window_with_point,
)
from latkit.terms import check_identity, explore_relatively_free, in_variety, parse_term, sd_identity, sd_level, variety_identities
from oracles import naive_congruence_closure, naive_lattice_classes, sd_strings


def _report(number, ok, detail=""):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")


@pytest.mark.criterion(1, "free distributive lattice on three generators")
def test_criterion_01_fd3(stopwatch):
    F = free_distributive(3)
    assert F.n == 18
    assert is_isomorphic(F, fixture("fd3")) is not None
    for g in F.generators.values():
        assert len(F.lower_covers[g]) == 1 and len(F.upper_covers[g]) == 1
    a, b, c = (F.generators[k] for k in "abc")
    upper = F.meet(F.meet(F.join(a, b), F.join(b, c)), F.join(c, a))
    lower = F.join(F.join(F.meet(a, b), F.meet(b, c)), F.meet(c, a))
    assert upper == lower
    assert stopwatch() < 1
    _report(1, True, f"18 elements, z = {F.names[upper]}")


@pytest.mark.criterion(2, "three successive quotients of FD(3)")
def test_criterion_02_quotients(stopwatch):
    F = free_distributive(3)
    e = F.element
    z = e("(a^b) v (a^c) v (b^c)")
    pairs = [(z, e("(a^b) v (a^c)")), (z, e("(a^c) v (b^c)")), (e("b v (a^c)"), e("b"))]
    theta = principal_congruence(F, *pairs[0])
    steps = [theta]
    theta = congruence_join(theta, principal_congruence(F, *pairs[1]))
    steps.append(theta)
    theta = congruence_join(theta, principal_congruence(F, *pairs[2]))
    steps.append(theta)
    counts = [len(t) for t in steps]
    oracle = [len(naive_congruence_closure(F, pairs[:k])) for k in (1, 2, 3)]
    assert counts == oracle == [13, 10, 8]
    for t, name in zip(steps, ("fig2_left", "fig2_middle", "fig2_right")):
        assert is_isomorphic(quotient(F, t)[0], fixture(name)) is not None
    assert is_isomorphic(quotient(F, steps[-1])[0], boolean(3)) is not None
    assert stopwatch() < 1
    _report(2, True, f"class counts {counts}")


@pytest.mark.criterion(3, "no doubly reducible elements iff block decomposition, distributive <= 8")
def test_criterion_03_decomposition_equivalence(stopwatch):
    for n in range(1, 9):
        total, dist = naive_lattice_classes(n)
        assert len(lattices(n)) == total
        assert sum(1 for L in lattices(n) if is_distributive(L)) == dist
    corpus = distributive_from_all(8)
    for L in corpus:
        assert (theorem2_decompose(L) is not None) == (not doubly_reducible(L))
    assert stopwatch() < 60
    _report(3, True, f"{len(corpus)} distributive lattices")


def _indecomposable_clean(limit):
    for L in distributive_upto(limit):
        if L.n > 1 and linear_decomposition(L).indecomposable and not doubly_reducible(L):
            yield L


@pytest.mark.criterion(4, "indecomposable, no doubly reducible, <= 10: width <= 2 or the cube")
def test_criterion_04_width_or_cube(stopwatch):
    seen = 0
    for L in _indecomposable_clean(10):
        seen += 1
        assert width(L)[0] <= 2 or is_isomorphic(L, boolean(3)) is not None
    assert seen > 0 and stopwatch() < 60
    _report(4, True, f"{seen} lattices")


@pytest.mark.criterion(5, "indecomposable, no doubly reducible, width 2, <= 12: 2 x chain")
def test_criterion_05_width_two(stopwatch):
    seen = 0
    for L in _indecomposable_clean(12):
        if width(L)[0] != 2:
            continue
        seen += 1
        assert L.n % 2 == 0 and is_isomorphic(L, product_chains(2, L.n // 2)) is not None
    assert seen > 0 and stopwatch() < 120
    _report(5, True, f"{seen} lattices")


@pytest.mark.criterion(6, "random block stacks satisfy Whitman; 2x2x3 and the 16-element cube fail")
def test_criterion_06_whitman_suite(stopwatch):
    rng = random.Random(20240601)
    blocks = [chain(1), boolean(3)] + [product_chains(2, k) for k in range(2, 6)]
    for _ in range(500):
        L = linear_sum([rng.choice(blocks) for _ in range(rng.randint(1, 4))])
        assert whitman(L)
        assert not doubly_reducible(L)
    for L in (product(boolean(2), chain(3)), boolean(4)):
        assert not whitman(L)
        assert doubly_reducible(L)
    assert stopwatch() < 30
    _report(6, True, "500 stacks")


@pytest.mark.criterion(7, "gadget census and FL(1+2) images")
def test_criterion_07_gadgets(stopwatch):
    classes = set()
    for L in distributive_from_all(8):
        for g in find_gadgets(L):
            classes.add(g.iso_class)
    assert classes <= {"case2", "case2-dual"} and classes
    F = fixture("fl_1_2")
    assert F.n == 9 and whitman(F)
    gf = F.generators
    for k in (1, 2, 3):
        G = fixture(f"gadget_case{k}")
        gg = G.generators
        f = extend_homomorphism(F, G, {gf["a"]: gg["p"], gf["b"]: gg["q"], gf["c"]: gg["r"]})
        assert f is not None and len(set(f)) == G.n
    assert stopwatch() < 60
    _report(7, True, f"classes seen {sorted(classes)}")


@pytest.mark.criterion(8, "semidistributivity hierarchy")
def test_criterion_08_sd(stopwatch):
    for n in range(5):
        for pol in ("meet", "join"):
            yn, _ = sd_strings(n, pol)
            assert sd_identity(n, pol).right.right == parse_term(yn)
    for L in distributive_from_all(8):
        assert sd_level(L) == (0 if L.n == 1 else 1)
    for L in lattices_upto(8):
        for pol in ("meet", "join"):
            for k in range(1, 4):
                if check_identity(L, sd_identity(k, pol)):
                    assert check_identity(L, sd_identity(k + 1, pol))
    assert sd_level(fixture("m3"), 6) is None
    assert stopwatch() < 60
    _report(8, True)


@pytest.mark.criterion(9, "doubling constructions, guard and boundedness")
def test_criterion_09_doubling(stopwatch):
    assert is_isomorphic(day_double(DoublingSpec(chain(1), {0})).lattice, chain(2)) is not None
    assert is_isomorphic(day_double(DoublingSpec(chain(2), {0, 1})).lattice, boolean(2)) is not None
    assert is_isomorphic(day_double(DoublingSpec(chain(3), {1})).lattice, chain(4)) is not None
    assert is_isomorphic(day_double(DoublingSpec(boolean(2), {1})).lattice, fixture("n5")) is not None
    from itertools import combinations

    checked = 0
    for L in lattices_upto(6):
        for r in range(1, L.n + 1):
            for S in combinations(range(L.n), r):
                if convexity_violation(L, S) is not None:
                    continue
                if not whitman_doubling_guard(L, S):
                    assert not whitman(day_double(DoublingSpec(L, S)).lattice)
                    checked += 1
    for L in lattices_upto(7):
        assert (undouble_search(L) is not None) == bool(is_bounded(L))
    assert stopwatch() < 120
    _report(9, True, f"{checked} guarded regions")


@pytest.mark.criterion(10, "spanning pair and window checks")
def test_criterion_10_spanning(stopwatch):
    r = verify_spanning_pair(ImplicitTwoByZ(), two_by_z_canonical(), 100)
    assert r.ok and r.unboundedness == "verified"
    W = two_by_z_window(-5, 5)
    assert reducible_antichain_bound(W.lattice, exclude=W.boundary)[0] == 2
    assert check_theorem6_conclusion(W, identity_embedding(W)).ok
    L, emb = window_with_point(0, 1, above=[(0, 0)], below=[(1, 1)])
    bad = check_theorem6_conclusion(L, emb)
    assert not bad.ok and bad.clauses["betweenness"].witness == ("r", 0, 1)
    assert stopwatch() < 5
    _report(10, True)


@pytest.mark.criterion(11, "relatively free SD2-join lattice: growing separated classes")
def test_criterion_11_explorer(stopwatch):
    ids = variety_identities("sd2v")
    probes = [L for L in lattices_upto(6) if in_variety(L, ids)]
    res = explore_relatively_free(ids, 3, 4, probes)
    assert len(probes) == 18
    assert res.counts == (3, 9, 23, 49, 97)
    assert res.counts[2] < res.counts[3] < res.counts[4]
    assert stopwatch() < 120
    _report(11, True, f"counts {list(res.counts)}")


def _cli(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "latkit.cli", *args], input=stdin,
                          capture_output=True, text=True, check=False)


@pytest.mark.criterion(12, "command-line contract")
def test_criterion_12_cli(stopwatch, tmp_path):
    out = _cli("construct", "linsum(1, boolean(3), product(chain(2), chain(4)))")
    assert out.returncode == 0
    L = lattice_from_document(out.stdout)
    assert json.loads(dumps(L)) == json.loads(out.stdout)
    path = tmp_path / "l.json"
    path.write_text(out.stdout)
    first, second = _cli("analyze", str(path)), _cli("analyze", str(path))
    assert first.returncode == second.returncode == 0 and first.stdout == second.stdout
    bad = json.dumps({"format_version": "1", "elements": ["0", "a", "b"], "covers": [["0", "a"], ["0", "b"]]})
    res = _cli("analyze", "-", stdin=bad)
    assert res.returncode == 2 and json.loads(res.stdout)["error"] == "NotALattice"
    assert stopwatch() < 5
    _report(12, True)
