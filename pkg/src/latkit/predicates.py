"""Decidable structure tests: distributivity, modularity, semidistributivity,
Whitman's condition, reducibility, width and linear decomposition.

The exhaustive triple and quadruple scans are vectorised over the join and
meet tables; witnesses are always the lowest-index failing tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import ElementSet, FiniteLattice, bits, distributive_violation


@dataclass(frozen=True)
class Check:
    """Outcome of a yes/no test, with a witness when the answer is no."""

    holds: bool
    witness: tuple | None = None
    sublattice: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _first(mask: np.ndarray) -> tuple | None:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def find_n5(L: FiniteLattice) -> tuple[int, int, int, int, int] | None:
    """``(bottom, a, c, b, top)`` of an N5 sublattice with ``a < c``, or ``None``."""
    mt, jt = L.meet_table, L.join_table
    for a in range(L.n):
        for c in bits(L.up[a] & ~(1 << a)):
            for b in range(L.n):
                if L.comparable(a, b) or L.comparable(c, b):
                    continue
                if mt[a][b] == mt[c][b] and jt[a][b] == jt[c][b]:
                    return (mt[a][b], a, c, b, jt[a][b])
    return None


def find_m3(L: FiniteLattice) -> tuple[int, int, int, int, int] | None:
    """``(bottom, a, b, c, top)`` of an M3 sublattice, or ``None``."""
    mt, jt = L.meet_table, L.join_table
    n = L.n
    for a in range(n):
        for b in range(a + 1, n):
            if L.comparable(a, b):
                continue
            lo, hi = mt[a][b], jt[a][b]
            for c in range(b + 1, n):
                if L.comparable(a, c) or L.comparable(b, c):
                    continue
                if mt[a][c] == lo and mt[b][c] == lo and jt[a][c] == hi and jt[b][c] == hi:
                    return (lo, a, b, c, hi)
    return None


def modular_violation(L: FiniteLattice) -> tuple[int, int, int] | None:
    """Lowest ``(x, y, z)`` with ``x <= z`` and ``x v (y ^ z) != (x v y) ^ z``."""
    J, M, le = L.join_array, L.meet_array, L.leq_matrix
    idx = np.arange(L.n)
    left = J[idx[:, None, None], M[None, :, :]]
    right = M[J[:, :, None], idx[None, None, :]]
    return _first(le[:, None, :] & (left != right))


def is_modular(L: FiniteLattice) -> Check:
    bad = modular_violation(L)
    if bad is None:
        return Check(True)
    return Check(False, bad, find_n5(L))


def is_distributive(L: FiniteLattice) -> Check:
    bad = distributive_violation(L)
    if bad is None:
        return Check(True)
    sub = find_n5(L)
    if sub is None:
        sub = find_m3(L)
    return Check(False, bad, sub)


def is_semidistributive_meet(L: FiniteLattice) -> Check:
    """a^b = a^c implies a^b = a^(b v c); witness ``(a, b, c)``."""
    J, M = L.join_array, L.meet_array
    idx = np.arange(L.n)
    ab = M[:, :, None]
    ac = M[:, None, :]
    abc = M[idx[:, None, None], J[None, :, :]]
    return Check(*_sd_result((ab == ac) & (ab != abc)))


def is_semidistributive_join(L: FiniteLattice) -> Check:
    """a v b = a v c implies a v b = a v (b ^ c); witness ``(a, b, c)``."""
    J, M = L.join_array, L.meet_array
    idx = np.arange(L.n)
    ab = J[:, :, None]
    ac = J[:, None, :]
    abc = J[idx[:, None, None], M[None, :, :]]
    return Check(*_sd_result((ab == ac) & (ab != abc)))


def _sd_result(mask: np.ndarray) -> tuple:
    w = _first(mask)
    return (w is None, w)


def whitman(L: FiniteLattice) -> Check:
    """Whitman's condition (W); witness ``(x, y, u, v)`` on failure.

    Groups the quadruple scan by ``m = x ^ y`` and ``s = u v v``: a failure
    exists iff some ``m <= s`` admits a pair below with both members outside
    ``down(s)`` and a pair above with both members outside ``up(m)``.
    """
    n = L.n
    le = L.leq_matrix
    J, M = L.join_array, L.meet_array
    notle = ~le
    # low[m, s]: some x, y with x ^ y = m, x !<= s, y !<= s
    low = np.zeros((n, n), dtype=bool)
    # high[m, s]: some u, v with u v v = s, m !<= u, m !<= v
    high = np.zeros((n, n), dtype=bool)
    for x in range(n):
        np.logical_or.at(low, M[x], notle[x][None, :] & notle)
        np.logical_or.at(high.T, J[x], notle[:, x][None, :] & notle.T)
    bad = le & low & high
    hit = _first(bad)
    if hit is None:
        return Check(True)
    m, s = hit
    xy = next((x, y) for x in range(n) for y in range(n) if M[x, y] == m and notle[x, s] and notle[y, s])
    uv = next((u, v) for u in range(n) for v in range(n) if J[u, v] == s and notle[m, u] and notle[m, v])
    return Check(False, (xy[0], xy[1], uv[0], uv[1]))


def whitman_bruteforce(L: FiniteLattice) -> Check:
    """Direct quadruple scan; the oracle for :func:`whitman`."""
    n = L.n
    for x in range(n):
        for y in range(n):
            m = L.meet(x, y)
            for u in range(n):
                for v in range(n):
                    s = L.join(u, v)
                    if L.leq(m, s) and not (L.leq(x, s) or L.leq(y, s) or L.leq(m, u) or L.leq(m, v)):
                        return Check(False, (x, y, u, v))
    return Check(True)


def join_reducible(L: FiniteLattice) -> ElementSet:
    return frozenset(x for x in range(L.n) if len(L.lower_covers[x]) >= 2)


def meet_reducible(L: FiniteLattice) -> ElementSet:
    return frozenset(x for x in range(L.n) if len(L.upper_covers[x]) >= 2)


def doubly_reducible(L: FiniteLattice) -> ElementSet:
    return join_reducible(L) & meet_reducible(L)


# ---------------------------------------------------------------------------
# width


def _max_matching(elements: list[int], up: tuple[int, ...]) -> int:
    """Maximum matching in the strict comparability bipartite graph."""
    pool = 0
    for x in elements:
        pool |= 1 << x
    succ = {x: list(bits(up[x] & pool & ~(1 << x))) for x in elements}
    match_right: dict[int, int] = {}

    def augment(x: int, seen: set[int]) -> bool:
        for y in succ[x]:
            if y in seen:
                continue
            seen.add(y)
            if y not in match_right or augment(match_right[y], seen):
                match_right[y] = x
                return True
        return False

    return sum(1 for x in elements if augment(x, set()))


def _width_of(elements: list[int], up: tuple[int, ...]) -> int:
    # Dilworth: width = size - minimum chain cover = size - maximum matching
    return len(elements) - _max_matching(elements, up) if elements else 0


def width_of_subset(L: FiniteLattice, elements: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Width of an induced subposet and its lexicographically least maximum antichain."""
    pool = sorted(set(elements))
    w = _width_of(pool, L.up)
    chosen: list[int] = []
    for x in pool:
        if len(chosen) == w:
            break
        if any(L.comparable(x, c) for c in chosen):
            continue
        trial = chosen + [x]
        rest = [y for y in pool if y > x and not any(L.comparable(y, c) for c in trial)]
        if len(trial) + _width_of(rest, L.up) == w:
            chosen = trial
    return w, tuple(chosen)


def width(L: FiniteLattice) -> tuple[int, tuple[int, ...]]:
    return width_of_subset(L, range(L.n))


def reducible_antichain_bound(L: FiniteLattice, exclude: Iterable[int] = ()) -> tuple[int, tuple[int, ...]]:
    """Largest antichain made of join- or meet-reducible elements.

    ``exclude`` removes elements (e.g. window boundary) from consideration.
    """
    skip = set(exclude)
    pool = [x for x in (join_reducible(L) | meet_reducible(L)) if x not in skip]
    return width_of_subset(L, pool)


# ---------------------------------------------------------------------------
# linear decomposition


@dataclass(frozen=True)
class LinearDecomposition:
    """Finest splitting of a lattice into a linear sum; blocks listed bottom-up."""

    blocks: tuple[ElementSet, ...]

    @property
    def indecomposable(self) -> bool:
        return len(self.blocks) == 1

    def block_lattices(self, L: FiniteLattice) -> list[FiniteLattice]:
        return [L.restrict(b) for b in self.blocks]

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


def linear_decomposition(L: FiniteLattice) -> LinearDecomposition:
    """Cut at every cover ``d < e`` such that each element is ``<= d`` or ``>= e``."""
    full = (1 << L.n) - 1
    cuts = sorted(
        (L.down[d] for d, e in L.covers if L.down[d] | L.up[e] == full),
        key=lambda m: bin(m).count("1"),
    )
    blocks = []
    prev = 0
    for c in cuts + [full]:
        blocks.append(frozenset(bits(c & ~prev)))
        prev = c
    return LinearDecomposition(tuple(blocks))
