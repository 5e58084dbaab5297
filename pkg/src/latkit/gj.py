"""Gadgets and the decision procedure for finite distributive sublattices of
free lattices.

A gadget ``G(p; q, r)`` is the sublattice generated by ``p, q, r`` where
``q < r``, ``p`` is incomparable to both, and ``p ^ q = p ^ r`` or
``p v q = p v r``.  Gadgets fall into six labelled classes: three fixture
shapes and their duals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .congruence import extend_homomorphism
from .constructors import boolean, fixture, product_chains
from .core import ElementSet, FiniteLattice, Poset, birkhoff_poset, dual, generated_sublattice, is_isomorphic
from .errors import NotDistributive, UnclassifiableGadget
from .predicates import doubly_reducible, is_distributive, linear_decomposition

GADGET_CLASSES = ("case1", "case2", "case3", "case1-dual", "case2-dual", "case3-dual")


@dataclass(frozen=True)
class GadgetWitness:
    p: int
    q: int
    r: int
    shared_bound_kind: str
    generated: ElementSet
    iso_class: str


@lru_cache(maxsize=None)
def _gadget_models() -> tuple[tuple[str, FiniteLattice, tuple[int, int, int]], ...]:
    """Labelled models: lattice plus the images of ``(p, q, r)``."""
    models = []
    for k in (1, 2, 3):
        G = fixture(f"gadget_case{k}")
        g = G.generators
        models.append((f"case{k}", G, (g["p"], g["q"], g["r"])))
    for k in (1, 2, 3):
        G = fixture(f"gadget_case{k}")
        g = G.generators
        # order reversal swaps which of q, r is the lower one
        models.append((f"case{k}-dual", dual(G), (g["p"], g["r"], g["q"])))
    return tuple(models)


def classify_gadget(L: FiniteLattice, p: int, q: int, r: int, generated: ElementSet | None = None) -> str:
    gen = generated if generated is not None else generated_sublattice(L, (p, q, r))
    order = sorted(gen)
    local = {x: i for i, x in enumerate(order)}
    G = L.restrict(order)
    for name, model, (mp, mq, mr) in _gadget_models():
        if model.n != G.n:
            continue
        if is_isomorphic(G, model, pinned={local[p]: mp, local[q]: mq, local[r]: mr}) is not None:
            return name
    raise UnclassifiableGadget(f"gadget on ({p}, {q}, {r}) with {G.n} elements matches no known shape")


def gadget_triples(L: FiniteLattice):
    """Every ``(p, q, r, kind)`` meeting the gadget conditions, in index order."""
    jt, mt = L.join_table, L.meet_table
    for p in range(L.n):
        for q in range(L.n):
            if L.comparable(p, q):
                continue
            for r in range(L.n):
                if r == q or not L.leq(q, r) or L.comparable(p, r):
                    continue
                m = mt[p][q] == mt[p][r]
                j = jt[p][q] == jt[p][r]
                if m or j:
                    yield p, q, r, "both" if m and j else ("meet" if m else "join")


def find_gadgets(L: FiniteLattice) -> list[GadgetWitness]:
    out = []
    cache: dict[tuple, str] = {}
    for p, q, r, kind in gadget_triples(L):
        gen = generated_sublattice(L, (p, q, r))
        key = (gen, p, q, r)
        if key not in cache:
            cache[key] = classify_gadget(L, p, q, r, gen)
        out.append(GadgetWitness(p, q, r, kind, gen, cache[key]))
    return out


def gadget_census(L: FiniteLattice) -> dict[str, int]:
    counts = Counter(g.iso_class for g in find_gadgets(L))
    return {name: counts[name] for name in GADGET_CLASSES if counts[name]}


def is_image_of_fl12(L: FiniteLattice, g: GadgetWitness) -> tuple[int, ...] | None:
    """The surjection from FL(1+2) onto the gadget sending ``a, b, c`` to
    ``p, q, r``, or ``None`` if the generator map does not extend."""
    F = fixture("fl_1_2")
    order = sorted(g.generated)
    local = {x: i for i, x in enumerate(order)}
    G = L.restrict(order)
    gens = F.generators
    f = extend_homomorphism(F, G, {gens["a"]: local[g.p], gens["b"]: local[g.q], gens["c"]: local[g.r]})
    if f is None or len(set(f)) != G.n:
        return None
    return f


# ---------------------------------------------------------------------------
# boolean sublattices


def boolean_from_antichain(L: FiniteLattice, A) -> FiniteLattice | None:
    """Sublattice generated by an antichain whose pairwise meets coincide,
    provided it is a boolean algebra of rank ``|A|``; otherwise ``None``."""
    A = sorted(set(A))
    if not A:
        return None
    if any(L.comparable(x, y) for i, x in enumerate(A) for y in A[i + 1:]):
        return None
    meets = {L.meet(x, y) for i, x in enumerate(A) for y in A[i + 1:]}
    if len(meets) > 1:
        return None
    B = L.restrict(sorted(generated_sublattice(L, A)))
    if B.n != 1 << len(A) or is_isomorphic(B, boolean(len(A))) is None:
        return None
    return B


# ---------------------------------------------------------------------------
# block decomposition


@dataclass(frozen=True)
class GJBlock:
    elements: ElementSet
    tag: str
    chain_length: int | None = None
    poset_shape: str = ""

    def label(self) -> str:
        return f"two_by_chain({self.chain_length})" if self.tag == "two_by_chain" else self.tag


@dataclass(frozen=True)
class GJDecomposition:
    blocks: tuple[GJBlock, ...] = field(default=())

    @property
    def tags(self) -> list[str]:
        return [b.label() for b in self.blocks]


def _describe(P: Poset) -> str:
    return f"{P.n} points, covers {[list(c) for c in P.covers]}"


def classify_block(B: FiniteLattice) -> GJBlock | None:
    """Tag an indecomposable distributive block from its Birkhoff poset."""
    P = birkhoff_poset(B)
    every = frozenset(range(B.n))
    shape = _describe(P)
    if P.n == 0:
        return GJBlock(every, "singleton", None, shape)
    if P.n == 3 and P.is_antichain():
        if is_isomorphic(B, boolean(3)) is None:
            return None
        return GJBlock(every, "cube", None, shape)
    comps = P.components()
    if len(comps) == 2:
        small, big = sorted(comps, key=len)
        if len(small) == 1 and _is_chain(P, big):
            k = len(big) + 1
            if is_isomorphic(B, product_chains(2, k)) is None:
                return None
            return GJBlock(every, "two_by_chain", k, shape)
    return None


def _is_chain(P: Poset, elements) -> bool:
    els = list(elements)
    return all(P.leq(x, y) or P.leq(y, x) for i, x in enumerate(els) for y in els[i + 1:])


def theorem2_decompose(L: FiniteLattice, require_no_doubly_reducible: bool = True) -> GJDecomposition | None:
    """Split a distributive lattice into singleton, cube and 2 x chain blocks.

    Returns ``None`` when some block of the finest linear decomposition has
    none of the three shapes (or, if requested, when ``L`` has doubly
    reducible elements).
    """
    if not is_distributive(L):
        raise NotDistributive("block decomposition needs a distributive lattice")
    if require_no_doubly_reducible and doubly_reducible(L):
        return None
    blocks = []
    for elems in linear_decomposition(L).blocks:
        order = sorted(elems)
        tagged = classify_block(L.restrict(order))
        if tagged is None:
            return None
        blocks.append(GJBlock(frozenset(order), tagged.tag, tagged.chain_length, tagged.poset_shape))
    return GJDecomposition(tuple(blocks))


@dataclass(frozen=True)
class Verdict:
    """``embeddable``, ``not_embeddable`` or ``out_of_scope`` with evidence."""

    verdict: str
    reason: str | None = None
    evidence: dict = field(default_factory=dict)
    decomposition: GJDecomposition | None = None

    def __bool__(self) -> bool:
        return self.verdict == "embeddable"


def decide_free_embeddable(L: FiniteLattice) -> Verdict:
    """Whether a finite lattice embeds in a free lattice.

    Only decided for distributive inputs; anything else is out of scope.
    """
    dist = is_distributive(L)
    if not dist:
        return Verdict("out_of_scope", "not_distributive",
                       {"violation": list(dist.witness), "sublattice": list(dist.sublattice or ())})
    dr = sorted(doubly_reducible(L))
    if dr:
        return Verdict("not_embeddable", "doubly_reducible", {"elements": dr})
    dec = theorem2_decompose(L, require_no_doubly_reducible=False)
    if dec is None:
        bad = next(sorted(b) for b in linear_decomposition(L).blocks if classify_block(L.restrict(sorted(b))) is None)
        return Verdict("not_embeddable", "nonconforming_block", {"block": bad})
    return Verdict("embeddable", None, {"blocks": dec.tags}, dec)
