"""Day's doubling construction, interval undoubling and boundedness.

``day_double`` replaces a convex set ``C`` by ``C x 2``.  A finite lattice
is bounded exactly when it can be built from the one-element lattice by
interval doublings; ``is_bounded`` decides this through the join-dependency
relation and ``undouble_search`` looks for an explicit doubling sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .congruence import principal_congruence, quotient
from .core import ElementSet, FiniteLattice, bits, dual, from_up_masks, is_isomorphic, join_irreducibles
from .errors import BudgetExceeded, NotConvex, SizeGuard
from .predicates import Check, join_reducible, meet_reducible


def _mask(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def convexity_violation(L: FiniteLattice, S: Iterable[int]) -> tuple[int, int, int] | None:
    """Lowest ``(x, r, y)`` with ``x, y`` in ``S``, ``x <= r <= y`` and ``r`` outside ``S``."""
    members = sorted(set(S))
    smask = _mask(members)
    for x in members:
        for y in bits(L.up[x] & smask):
            gap = L.up[x] & L.down[y] & ~smask
            if gap:
                return (x, next(bits(gap)), y)
    return None


def is_convex(L: FiniteLattice, S: Iterable[int]) -> Check:
    bad = convexity_violation(L, S)
    return Check(bad is None, bad)


def interval(L: FiniteLattice, p: int, q: int) -> ElementSet:
    if not L.leq(p, q):
        raise ValueError(f"interval needs p <= q, got {p} and {q}")
    return frozenset(bits(L.up[p] & L.down[q]))


def interval_endpoints(L: FiniteLattice, S: Iterable[int]) -> tuple[int, int] | None:
    """``(p, q)`` when ``S`` is exactly the interval ``[p, q]``, else ``None``."""
    S = frozenset(S)
    if not S:
        return None
    p, q = L.meet_all(S), L.join_all(S)
    return (p, q) if interval(L, p, q) == S else None


@dataclass(frozen=True)
class DoublingSpec:
    """A lattice, a convex region ``C`` and whether ``C`` is an interval."""

    base: FiniteLattice
    region: ElementSet
    interval_flag: bool = False
    endpoints: tuple[int, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "region", frozenset(self.region))
        bad = convexity_violation(self.base, self.region)
        if bad is not None:
            raise NotConvex(f"region is not convex: {bad[0]} <= {bad[1]} <= {bad[2]}", bad)
        if self.interval_flag:
            ends = interval_endpoints(self.base, self.region)
            if ends is None:
                raise ValueError("region is not an interval")
            object.__setattr__(self, "endpoints", ends)

    @classmethod
    def for_interval(cls, L: FiniteLattice, p: int, q: int) -> "DoublingSpec":
        return cls(L, interval(L, p, q), True)

    def to_document(self) -> dict:
        return {"region": [self.base.names[x] for x in sorted(self.region)], "interval": self.interval_flag}


@dataclass(frozen=True)
class Doubled:
    """Result of a doubling, with the placement of every base element.

    ``lower[x]`` and ``upper[x]`` are the images ``(x, 0)`` and ``(x, 1)``
    for ``x`` in the region and both equal the unique image otherwise;
    ``projection`` erases the second coordinate.
    """

    lattice: FiniteLattice
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    projection: tuple[int, ...]


def day_double(spec: DoublingSpec) -> Doubled:
    """Build ``L[C]`` from the four-clause order; raises ``NotALattice`` if
    the result is not a lattice (possible for non-interval regions)."""
    L, C = spec.base, spec.region
    points: list[tuple[int, int | None]] = []
    for x in range(L.n):
        if x in C:
            points.extend([(x, 0), (x, 1)])
        else:
            points.append((x, None))
    pos = {pt: i for i, pt in enumerate(points)}

    def leq(a, b) -> bool:
        (u, i), (v, j) = a, b
        if i is not None and j is not None:
            return L.leq(u, v) and i <= j
        return L.leq(u, v)

    up = [_mask(j for j, b in enumerate(points) if leq(a, b)) for a in points]
    names = [L.names[x] if i is None else f"({L.names[x]},{i})" for x, i in points]
    D = from_up_masks(up, names=names)
    lower = tuple(pos[(x, 0)] if x in C else pos[(x, None)] for x in range(L.n))
    upper = tuple(pos[(x, 1)] if x in C else pos[(x, None)] for x in range(L.n))
    return Doubled(D, lower, upper, tuple(x for x, _ in points))


# ---------------------------------------------------------------------------
# undoubling


def _copy_congruence(L: FiniteLattice, a: int, b: int):
    """The congruence of ``a ≺ b`` if it could be the kernel of an interval
    doubling: classes of size at most two whose collapsed image is an interval."""
    theta = principal_congruence(L, a, b)
    if any(len(c) > 2 for c in theta.classes):
        return None
    K, proj = quotient(L, theta)
    region = frozenset(proj[c[0]] for c in theta.classes if len(c) == 2)
    if interval_endpoints(K, region) is None:
        return None
    return theta, K, region


def undouble_search(L: FiniteLattice, budget: int = 10_000, max_size: int = 16) -> list[DoublingSpec] | None:
    """Interval doublings leading from the one-element lattice to ``L``.

    Depth-first, trying the largest collapsible interval first; every step is
    confirmed by rebuilding the double and testing isomorphism.  Returns
    ``None`` when no sequence exists; raises ``BudgetExceeded`` when more
    than ``budget`` candidate steps were examined.
    """
    if L.n > max_size:
        raise SizeGuard(f"undoubling limited to {max_size} elements")
    spent = 0
    failed: set[tuple] = set()

    def search(M: FiniteLattice) -> list[DoublingSpec] | None:
        nonlocal spent
        if M.n == 1:
            return []
        key = (M.n, M.up)
        if key in failed:
            return None
        options = []
        seen = set()
        for a, b in M.covers:
            spent += 1
            if spent > budget:
                raise BudgetExceeded(f"undoubling gave up after {budget} steps")
            found = _copy_congruence(M, a, b)
            if found is None or found[0].labels in seen:
                continue
            seen.add(found[0].labels)
            options.append(found)
        options.sort(key=lambda o: (-len(o[2]), o[0].labels))
        for _, K, region in options:
            spec = DoublingSpec(K, region, True)
            if is_isomorphic(day_double(spec).lattice, M) is None:
                continue
            rest = search(K)
            if rest is not None:
                return rest + [spec]
        failed.add(key)
        return None

    return search(L)


# ---------------------------------------------------------------------------
# boundedness


def dependency_relation(L: FiniteLattice) -> dict[int, list[int]]:
    """Join dependency on join-irreducibles.

    ``p D q`` iff ``p != q`` and some ``x`` has ``p <= q v x`` but not
    ``p <= q_* v x``, where ``q_*`` is the unique lower cover of ``q``.
    """
    J = sorted(join_irreducibles(L))
    out: dict[int, list[int]] = {p: [] for p in J}
    jt = L.join_table
    for q in J:
        qs = L.lower_covers[q][0]
        for x in range(L.n):
            hi, lo = jt[q][x], jt[qs][x]
            if hi == lo:
                continue
            for p in J:
                if p != q and L.leq(p, hi) and not L.leq(p, lo) and q not in out[p]:
                    out[p].append(q)
    for p in out:
        out[p].sort()
    return out


def _find_cycle(graph: dict[int, list[int]]) -> list[int] | None:
    state: dict[int, int] = {}
    stack: list[int] = []

    def visit(v: int) -> list[int] | None:
        state[v] = 1
        stack.append(v)
        for w in graph[v]:
            if state.get(w) == 1:
                return stack[stack.index(w):] + [w]
            if w not in state:
                cyc = visit(w)
                if cyc:
                    return cyc
        stack.pop()
        state[v] = 2
        return None

    for v in sorted(graph):
        if v not in state:
            cyc = visit(v)
            if cyc:
                return cyc
    return None


def _topological(graph: dict[int, list[int]]) -> list[int]:
    out: list[int] = []
    done: set[int] = set()

    def visit(v: int) -> None:
        done.add(v)
        for w in graph[v]:
            if w not in done:
                visit(w)
        out.append(v)

    for v in sorted(graph):
        if v not in done:
            visit(v)
    return out


def is_bounded(L: FiniteLattice) -> Check:
    """Bounded iff neither ``L`` nor its dual has a join-dependency cycle.

    On failure the witness is ``("lower" | "upper", cycle)``; on success it
    is the pair of topological orders of the two relations.
    """
    lower = dependency_relation(L)
    cyc = _find_cycle(lower)
    if cyc:
        return Check(False, ("lower", tuple(cyc)))
    upper = dependency_relation(dual(L))
    cyc = _find_cycle(upper)
    if cyc:
        return Check(False, ("upper", tuple(cyc)))
    return Check(True, (tuple(_topological(lower)), tuple(_topological(upper))))


# ---------------------------------------------------------------------------
# Whitman guard


def whitman_doubling_guard(L: FiniteLattice, C: Iterable[int]) -> Check:
    """Every element of ``C`` that is neither maximal nor minimal in ``C``
    must be doubly irreducible in ``L``; witness is the first offender."""
    C = frozenset(C)
    bad = convexity_violation(L, C)
    if bad is not None:
        raise NotConvex(f"region is not convex: {bad[0]} <= {bad[1]} <= {bad[2]}", bad)
    reducible = join_reducible(L) | meet_reducible(L)
    cmask = _mask(C)
    for x in sorted(C):
        above = L.up[x] & cmask & ~(1 << x)
        below = L.down[x] & cmask & ~(1 << x)
        if above and below and x in reducible:
            return Check(False, (x,))
    return Check(True)
