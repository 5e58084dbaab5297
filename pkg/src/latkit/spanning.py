"""Spanning pairs and finite-window checks around embeddings of 2 x Z.

A spanning pair is a cover ``p ≺ q`` together with a chain climbing from
``p`` without upper bound and a chain descending from ``q`` without lower
bound, such that no ``p_m`` reaches ``q`` and no ``q_n`` drops to ``p``.
Unboundedness can only be certified structurally (for the implicit 2 x Z);
on finite data it is either refuted or left unverifiable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, Union

from .constructors import Coord, ImplicitTwoByZ, TwoByZWindow, product_chains
from .core import FiniteLattice, is_isomorphic, validate
from .doubling import DoublingSpec, convexity_violation, day_double
from .errors import ElementOutOfWindow, NotConvex
from .predicates import Check, reducible_antichain_bound

CANONICAL = "two_by_z_canonical"

Host = Union[ImplicitTwoByZ, TwoByZWindow, FiniteLattice]


@dataclass(frozen=True)
class Report:
    """Named clause results; ``failed`` is the first clause that does not hold."""

    clauses: dict = field(default_factory=dict)
    unboundedness: str | None = None
    conclusion: Check | None = None

    @property
    def ok(self) -> bool:
        return all(bool(c) for c in self.clauses.values())

    @property
    def failed(self) -> str | None:
        return next((k for k, c in self.clauses.items() if not c), None)

    def to_document(self) -> dict:
        doc = {
            "ok": self.ok,
            "clauses": {k: {"holds": c.holds, "witness": _plain(c.witness)} for k, c in self.clauses.items()},
        }
        if self.unboundedness is not None:
            doc["unboundedness"] = self.unboundedness
        if self.conclusion is not None:
            doc["conclusion_two_by_chain"] = self.conclusion.holds
        return doc


def _plain(w):
    if isinstance(w, (tuple, list)):
        return [_plain(x) for x in w]
    return w


# ---------------------------------------------------------------------------
# witnesses


Sequenceish = Union[str, Sequence, Callable[[int], object]]


@dataclass(frozen=True)
class SpanningPairWitness:
    """``p ≺ q`` with ``ascending[m]`` giving ``p_m`` and ``descending[n]``
    giving ``q_n`` (indices start at 1).  Either map may be an explicit list,
    a callable, or the named formula ``"two_by_z_canonical"``."""

    p: object
    q: object
    ascending: Sequenceish = CANONICAL
    descending: Sequenceish = CANONICAL
    dual: bool = False

    @property
    def canonical(self) -> bool:
        return self.ascending == CANONICAL and self.descending == CANONICAL

    def p_m(self, m: int):
        return self._term(self.ascending, m, up=True)

    def q_n(self, n: int):
        return self._term(self.descending, n, up=False)

    def _term(self, seq, i: int, up: bool):
        if seq == CANONICAL:
            # p = (0,0) climbs the lower column, q = (1,0) descends the upper one
            col = 0 if up else 1
            step = i if up else -i
            if self.dual:
                col, step = 1 - col, -step
            return (col, step)
        if callable(seq):
            return seq(i)
        if i > len(seq):
            raise IndexError(f"explicit sequence has only {len(seq)} terms")
        return seq[i - 1]

    def available(self, n: int) -> int:
        lens = [len(s) for s in (self.ascending, self.descending) if not isinstance(s, str) and not callable(s)]
        return min([n] + lens)


def two_by_z_canonical(dual: bool = False) -> SpanningPairWitness:
    """The standard pair of 2 x Z: ``p = (0,0)``, ``q = (1,0)``,
    ``p_m = (0,m)``, ``q_n = (1,-n)`` (mirrored for the dual order)."""
    if dual:
        return SpanningPairWitness((1, 0), (0, 0), CANONICAL, CANONICAL, dual=True)
    return SpanningPairWitness((0, 0), (1, 0))


def witness_from_document(doc: Mapping) -> SpanningPairWitness:
    def conv(v):
        if isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) for x in v):
            return tuple(v)
        return v

    def seq(v):
        if v == CANONICAL:
            return CANONICAL
        return tuple(conv(x) for x in v)

    return SpanningPairWitness(conv(doc["p"]), conv(doc["q"]), seq(doc.get("ascending", CANONICAL)),
                               seq(doc.get("descending", CANONICAL)), bool(doc.get("dual", False)))


# ---------------------------------------------------------------------------
# hosts


class _Order:
    """Uniform ``leq`` / ``covers`` over the three kinds of host."""

    def __init__(self, host: Host):
        self.host = host

    def resolve(self, x):
        h = self.host
        if isinstance(h, ImplicitTwoByZ):
            if not (isinstance(x, tuple) and len(x) == 2 and x[0] in (0, 1)):
                raise ElementOutOfWindow(f"{x!r} is not a point of 2 x Z")
            return x
        if isinstance(h, TwoByZWindow):
            x = tuple(x) if isinstance(x, list) else x
            if isinstance(x, tuple):
                if x not in h:
                    raise ElementOutOfWindow(f"{x!r} lies outside the window [{h.lo}, {h.hi}]")
                return h.index(x)
            return h.lattice.element(x)
        try:
            return h.element(x)
        except KeyError as exc:
            raise ElementOutOfWindow(str(exc)) from None

    @property
    def lattice(self) -> FiniteLattice | None:
        h = self.host
        return h.lattice if isinstance(h, TwoByZWindow) else (h if isinstance(h, FiniteLattice) else None)

    def leq(self, a, b) -> bool:
        if isinstance(self.host, ImplicitTwoByZ):
            return self.host.leq(a, b)
        return self.lattice.leq(a, b)

    def covers(self, a, b) -> bool:
        if isinstance(self.host, ImplicitTwoByZ):
            return self.host.covers(a, b)
        return self.lattice.covered_by(a, b)


def verify_spanning_pair(host: Host, w: SpanningPairWitness, prefix: int = 10) -> Report:
    """Check the spanning-pair conditions on the first ``prefix`` terms.

    Unboundedness is ``verified`` only for the canonical formula on the
    implicit 2 x Z, ``refuted`` on a plain finite lattice (its top and bottom
    bound everything) and ``unverifiable`` otherwise.
    """
    order = _Order(host)
    n = w.available(prefix)
    p, q = order.resolve(w.p), order.resolve(w.q)
    ps = [p] + [order.resolve(w.p_m(m)) for m in range(1, n + 1)]
    qs = [q] + [order.resolve(w.q_n(k)) for k in range(1, n + 1)]

    def first(pred, items):
        return next((i for i in items if pred(i)), None)

    clauses = {}
    clauses["cover"] = Check(order.covers(p, q), None if order.covers(p, q) else (w.p, w.q))
    bad = first(lambda m: not (order.leq(ps[m - 1], ps[m]) and ps[m - 1] != ps[m]), range(1, n + 1))
    clauses["ascending_strict"] = Check(bad is None, None if bad is None else (bad,))
    bad = first(lambda k: not (order.leq(qs[k], qs[k - 1]) and qs[k - 1] != qs[k]), range(1, n + 1))
    clauses["descending_strict"] = Check(bad is None, None if bad is None else (bad,))
    bad = first(lambda m: order.leq(q, ps[m]), range(1, n + 1))
    clauses["q_not_below_p_m"] = Check(bad is None, None if bad is None else (bad,))
    bad = first(lambda k: order.leq(qs[k], p), range(1, n + 1))
    clauses["q_n_not_below_p"] = Check(bad is None, None if bad is None else (bad,))
    if n < prefix:
        clauses["prefix_length"] = Check(False, (n, prefix))

    if isinstance(host, ImplicitTwoByZ):
        structural = w.canonical and w.dual == host.dual
        verdict = "verified" if structural else "unverifiable"
    elif isinstance(host, TwoByZWindow):
        verdict = "unverifiable"
    else:
        verdict = "refuted"
    if verdict == "refuted":
        L = order.lattice
        clauses["unbounded"] = Check(False, ("bounded_by", L.names[L.top], L.names[L.bottom]))
    return Report(clauses, verdict)


# ---------------------------------------------------------------------------
# embeddings of 2 x Z windows


@dataclass(frozen=True)
class EmbeddingWindow:
    """A map from the window ``{(i, k) : lo <= k <= hi}`` of 2 x Z into a lattice."""

    f: Mapping[Coord, int]
    lo: int
    hi: int

    def coords(self) -> list[Coord]:
        return [(i, k) for k in range(self.lo, self.hi + 1) for i in (0, 1)]

    def __call__(self, c: Coord) -> int:
        return self.f[tuple(c)]


def identity_embedding(window: TwoByZWindow) -> EmbeddingWindow:
    return EmbeddingWindow({c: window.index(c) for c in window.coords}, window.lo, window.hi)


def check_theorem6_hypothesis(host: Union[TwoByZWindow, FiniteLattice], N: int) -> Check:
    """Every antichain of join- or meet-reducible elements has at most ``N``
    members.  Window boundary columns are left out, since their covers may
    lie outside the window.  Witness: the largest such antichain."""
    if isinstance(host, TwoByZWindow):
        size, ac = reducible_antichain_bound(host.lattice, exclude=host.boundary)
    else:
        size, ac = reducible_antichain_bound(host)
    return Check(size <= N, (size, ac))


def check_theorem6_conclusion(L: Union[FiniteLattice, TwoByZWindow], emb: EmbeddingWindow) -> Report:
    """(a) ``emb`` is an injective lattice homomorphism on the window,
    (b) ``emb(0,k) ≺ emb(1,k)`` for every ``k`` in the window,
    (c) any ``r`` outside the image with ``emb(0,m) < r < emb(1,n)`` satisfies
    ``r <= emb(0,n)`` or ``emb(1,m) <= r``."""
    if isinstance(L, TwoByZWindow):
        L = L.lattice
    host = ImplicitTwoByZ()
    coords = emb.coords()
    clauses = {}
    images = [emb(c) for c in coords]
    bad = None
    if len(set(images)) != len(images):
        seen = {}
        for c in coords:
            if emb(c) in seen:
                bad = ("not_injective", seen[emb(c)], c)
                break
            seen[emb(c)] = c
    if bad is None:
        for i, a in enumerate(coords):
            for b in coords[i:]:
                if emb(host.join(a, b)) != L.join(emb(a), emb(b)):
                    bad = ("join", a, b)
                    break
                if emb(host.meet(a, b)) != L.meet(emb(a), emb(b)):
                    bad = ("meet", a, b)
                    break
            if bad:
                break
    clauses["embedding"] = Check(bad is None, bad)

    bad = next(((0, k) for k in range(emb.lo, emb.hi + 1) if not L.covered_by(emb((0, k)), emb((1, k)))), None)
    clauses["covers"] = Check(bad is None, bad)

    image = set(images)
    bad = None
    for r in range(L.n):
        if r in image:
            continue
        for m in range(emb.lo, emb.hi + 1):
            if not L.lt(emb((0, m)), r):
                continue
            for n in range(m, emb.hi + 1):
                if L.lt(r, emb((1, n))) and not (L.leq(r, emb((0, n))) or L.leq(emb((1, m)), r)):
                    bad = (L.names[r], m, n)
                    break
            if bad:
                break
        if bad:
            break
    clauses["betweenness"] = Check(bad is None, bad)
    return Report(clauses)


def window_with_point(lo: int, hi: int, above: Sequence[Coord], below: Sequence[Coord],
                      name: str = "r") -> tuple[FiniteLattice, EmbeddingWindow]:
    """A 2 x Z window plus one extra point ``r`` with ``a <= r`` for every
    ``a`` in ``above`` and ``r <= b`` for every ``b`` in ``below``.

    Raises ``NotAPartialOrder`` or ``NotALattice`` if the placement is
    inconsistent.
    """
    host = ImplicitTwoByZ()
    coords = [(i, k) for k in range(lo, hi + 1) for i in (0, 1)]
    pos = {c: j for j, c in enumerate(coords)}
    r = len(coords)
    pairs = [(pos[a], pos[b]) for a in coords for b in coords if host.covers(a, b)]
    pairs += [(pos[tuple(a)], r) for a in above] + [(r, pos[tuple(b)]) for b in below]
    names = [f"({i},{k})" for i, k in coords] + [name]
    L = validate(len(coords) + 1, pairs, names=names)
    return L, EmbeddingWindow({c: j for j, c in enumerate(coords)}, lo, hi)


# ---------------------------------------------------------------------------
# doubling premise


def check_theorem5_premise(L: FiniteLattice, L_prime: FiniteLattice, C, iso: Sequence[int], p: int, q: int) -> Report:
    """Clauses: ``C`` convex in ``L_prime``; ``iso`` an isomorphism from ``L``
    onto ``L_prime[C]``; ``iso(p), iso(q)`` the two copies of one ``c`` in
    ``C``.  When all hold, ``two_by_chain`` records whether ``L`` has the
    shape 2 x chain (reported separately as ``conclusion``)."""
    clauses = {}
    C = frozenset(C)
    bad = convexity_violation(L_prime, C)
    clauses["convex"] = Check(bad is None, bad)
    if bad is not None:
        return Report(clauses)
    try:
        D = day_double(DoublingSpec(L_prime, C))
    except NotConvex as exc:  # pragma: no cover - guarded above
        clauses["convex"] = Check(False, exc.witness)
        return Report(clauses)
    iso = tuple(iso)
    bad = None
    if len(iso) != L.n or sorted(iso) != list(range(D.lattice.n)):
        bad = ("not_bijective",)
    else:
        for x in range(L.n):
            for y in range(L.n):
                if L.leq(x, y) != D.lattice.leq(iso[x], iso[y]):
                    bad = ("order", x, y)
                    break
            if bad:
                break
    clauses["isomorphism"] = Check(bad is None, bad)
    if bad is not None:
        return Report(clauses)
    c = next((c for c in sorted(C) if D.lower[c] == iso[p] and D.upper[c] == iso[q]), None)
    clauses["copy_pair"] = Check(c is not None, None if c is not None else (p, q))
    if c is None:
        return Report(clauses)
    shape = L.n % 2 == 0 and is_isomorphic(L, product_chains(2, L.n // 2)) is not None
    return Report(clauses, conclusion=Check(shape, None if shape else (L.n,)))
