"""Finite lattices as immutable table-backed values.

Elements are the dense indices ``0..n-1``; display names are metadata.  The
order is kept as per-element bitmasks (``up[x]`` has bit ``y`` set iff
``x <= y``), which makes closure, cover and bound computations cheap.  Join
and meet tables are computed once, at validation time.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .config import limits
from .errors import CapExceeded, NotALattice, NotAPartialOrder, NotDistributive, SizeGuard

ElementSet = frozenset  # frozenset[int] of element indices


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# ---------------------------------------------------------------------------
# order relations as bitmasks


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Reflexive-transitive closure of ``pairs``; raises on cycles."""
    succ: list[set[int]] = [set() for _ in range(n)]
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise NotAPartialOrder(f"pair ({a}, {b}) outside carrier of size {n}", (a, b))
        if a != b:
            succ[a].add(b)
    indeg = [0] * n
    for a in range(n):
        for b in succ[a]:
            indeg[b] += 1
    queue = deque(x for x in range(n) if indeg[x] == 0)
    topo = []
    while queue:
        x = queue.popleft()
        topo.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    if len(topo) != n:
        stuck = min(x for x in range(n) if indeg[x] > 0)
        raise NotAPartialOrder("order relation contains a cycle", (stuck,))
    up = [0] * n
    for x in reversed(topo):
        m = 1 << x
        for y in succ[x]:
            m |= up[y]
        up[x] = m
    return up


def _transpose(up: Sequence[int]) -> list[int]:
    n = len(up)
    down = [0] * n
    for x in range(n):
        for y in bits(up[x]):
            down[y] |= 1 << x
    return down


def _cover_lists(up: Sequence[int], down: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    n = len(up)
    lower: list[list[int]] = [[] for _ in range(n)]
    upper: list[list[int]] = [[] for _ in range(n)]
    for x in range(n):
        strict_up = up[x] & ~(1 << x)
        for y in bits(strict_up):
            between = strict_up & down[y] & ~(1 << y)
            if not between:
                upper[x].append(y)
                lower[y].append(x)
    return lower, upper


def _bound_tables(up: Sequence[int], down: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Join and meet tables, or ``NotALattice`` with the lowest failing pair."""
    n = len(up)
    by_up = {m: x for x, m in enumerate(up)}
    by_down = {m: x for x, m in enumerate(down)}
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            j = by_up.get(up[x] & up[y])
            if j is None:
                raise NotALattice(f"elements {x} and {y} have no least upper bound", (x, y))
            m = by_down.get(down[x] & down[y])
            if m is None:
                raise NotALattice(f"elements {x} and {y} have no greatest lower bound", (x, y))
            join[x][y] = join[y][x] = j
            meet[x][y] = meet[y][x] = m
    return join, meet


# ---------------------------------------------------------------------------
# posets


@dataclass(frozen=True, eq=False)
class Poset:
    """A finite poset; ``up[x]`` is the bitmask of elements above ``x``."""

    up: tuple[int, ...]
    names: tuple[str, ...]
    origin: tuple[int, ...] | None = None

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]], names=None, origin=None) -> "Poset":
        up = _closure(n, pairs)
        names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        return cls(tuple(up), names, origin)

    @property
    def n(self) -> int:
        return len(self.up)

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(_transpose(self.up))

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    @cached_property
    def _covers(self):
        return _cover_lists(self.up, self.down)

    @property
    def lower_covers(self) -> list[list[int]]:
        return self._covers[0]

    @property
    def upper_covers(self) -> list[list[int]]:
        return self._covers[1]

    @property
    def covers(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in self.upper_covers[x]]

    def downsets(self) -> list[int]:
        """All down-closed subsets as bitmasks, in a deterministic order."""
        order = sorted(range(self.n), key=lambda x: popcount(self.down[x]))
        out: list[int] = []

        def extend(i: int, current: int) -> None:
            if i == len(order):
                out.append(current)
                return
            x = order[i]
            extend(i + 1, current)
            strict_down = self.down[x] & ~(1 << x)
            if strict_down & current == strict_down:
                extend(i + 1, current | (1 << x))

        extend(0, 0)
        return sorted(out, key=lambda m: (popcount(m), m))

    def components(self) -> list[list[int]]:
        """Connected components of the comparability graph."""
        seen = 0
        comps = []
        for x in range(self.n):
            if seen >> x & 1:
                continue
            comp = 0
            frontier = 1 << x
            while frontier:
                comp |= frontier
                nxt = 0
                for y in bits(frontier):
                    nxt |= self.up[y] | self.down[y]
                frontier = nxt & ~comp
            seen |= comp
            comps.append(list(bits(comp)))
        return comps

    def is_chain(self) -> bool:
        return all((self.up[x] | self.down[x]).bit_count() == self.n for x in range(self.n)) if self.n else True

    def is_antichain(self) -> bool:
        return all(self.up[x] == 1 << x for x in range(self.n))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={self.covers})"


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """An explicit finite lattice with precomputed join and meet tables.

    Build one with :func:`validate` (or :meth:`from_covers`); the constructor
    itself trusts its arguments.
    """

    up: tuple[int, ...]
    join_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    meta: Mapping = field(default_factory=lambda: MappingProxyType({}))

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]], names=None, meta=None) -> "FiniteLattice":
        return validate(n, covers, names=names, meta=meta)

    @property
    def n(self) -> int:
        return len(self.up)

    def __len__(self) -> int:
        return len(self.up)

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(_transpose(self.up))

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        n = self.n
        m = np.zeros((n, n), dtype=bool)
        for x in range(n):
            for y in bits(self.up[x]):
                m[x, y] = True
        m.flags.writeable = False
        return m

    @cached_property
    def join_array(self) -> np.ndarray:
        a = np.array(self.join_table, dtype=np.int64).reshape(self.n, self.n)
        a.flags.writeable = False
        return a

    @cached_property
    def meet_array(self) -> np.ndarray:
        a = np.array(self.meet_table, dtype=np.int64).reshape(self.n, self.n)
        a.flags.writeable = False
        return a

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.up[x] >> y & 1)

    def comparable(self, x: int, y: int) -> bool:
        return bool((self.up[x] | self.down[x]) >> y & 1)

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join_table[acc][x]
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = self.meet_table[acc][x]
        return acc

    @cached_property
    def bottom(self) -> int:
        return next(x for x in range(self.n) if self.down[x] == 1 << x)

    @cached_property
    def top(self) -> int:
        return next(x for x in range(self.n) if self.up[x] == 1 << x)

    @cached_property
    def _covers(self):
        return _cover_lists(self.up, self.down)

    @property
    def lower_covers(self) -> list[list[int]]:
        return self._covers[0]

    @property
    def upper_covers(self) -> list[list[int]]:
        return self._covers[1]

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return tuple((x, y) for x in range(self.n) for y in self.upper_covers[x])

    def covered_by(self, x: int, y: int) -> bool:
        return y in self.upper_covers[x]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    @property
    def generators(self) -> dict[str, int]:
        return dict(self.meta.get("generators", {}))

    def element(self, ref) -> int:
        """Resolve an index, a display name, or a generator name."""
        if isinstance(ref, (int, np.integer)):
            if not 0 <= ref < self.n:
                raise KeyError(f"element index {ref} out of range")
            return int(ref)
        gens = self.meta.get("generators", {})
        if ref in self.names:
            return self.names.index(ref)
        if ref in gens:
            return gens[ref]
        raise KeyError(f"no element named {ref!r}")

    def restrict(self, elements: Iterable[int], meta=None) -> "FiniteLattice":
        """The induced sublattice on a join- and meet-closed set."""
        idx = sorted(set(elements))
        pos = {x: i for i, x in enumerate(idx)}
        pairs = [(pos[x], pos[y]) for x in idx for y in bits(self.up[x]) if y in pos]
        return validate(len(idx), pairs, names=[self.names[x] for x in idx], meta=meta)

    def height(self) -> list[int]:
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.n
        for x in sorted(range(self.n), key=lambda e: popcount(self.down[e])):
            for c in self.lower_covers[x]:
                h[x] = max(h[x], h[c] + 1)
        return h

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.up == other.up and self.names == other.names

    def __hash__(self) -> int:
        return hash((self.up, self.names))

    def __repr__(self) -> str:
        return f"FiniteLattice(n={self.n}, covers={len(self.covers)})"


def _freeze_meta(meta) -> Mapping:
    return MappingProxyType(dict(meta or {}))


def from_up_masks(up: Sequence[int], names=None, meta=None) -> FiniteLattice:
    up = tuple(up)
    down = _transpose(up)
    join, meet = _bound_tables(up, down)
    names = tuple(names) if names is not None else tuple(str(i) for i in range(len(up)))
    if len(set(names)) != len(names):
        raise ValueError("element names must be unique")
    lat = FiniteLattice(up, tuple(map(tuple, join)), tuple(map(tuple, meet)), names, _freeze_meta(meta))
    lat.__dict__["down"] = tuple(down)
    return lat


def validate(n: int, pairs: Iterable[tuple[int, int]], names=None, meta=None) -> FiniteLattice:
    """Turn order or cover pairs on ``0..n-1`` into a lattice.

    Raises ``NotAPartialOrder`` on cycles and ``NotALattice`` (with the
    offending pair as ``witness``) when some pair lacks a unique bound.
    """
    if n < 1:
        raise NotALattice("a lattice needs at least one element")
    up = _closure(n, pairs)
    return from_up_masks(up, names=names, meta=meta)


def validate_named(elements: Sequence[str], covers: Iterable[tuple[str, str]], meta=None) -> FiniteLattice:
    pos = {name: i for i, name in enumerate(elements)}
    if len(pos) != len(elements):
        raise ValueError("element names must be unique")
    pairs = []
    for lo, hi in covers:
        if lo not in pos or hi not in pos:
            raise KeyError(f"cover ({lo!r}, {hi!r}) references an undeclared element")
        pairs.append((pos[lo], pos[hi]))
    return validate(len(elements), pairs, names=elements, meta=meta)


def dual(L: FiniteLattice) -> FiniteLattice:
    meta = {k: v for k, v in L.meta.items() if k != "antichains"}
    meta["dual"] = not L.meta.get("dual", False)
    lat = FiniteLattice(L.down, L.meet_table, L.join_table, L.names, _freeze_meta(meta))
    lat.__dict__["down"] = L.up
    return lat


def generated_sublattice(L: FiniteLattice, S: Iterable[int]) -> ElementSet:
    """Least join- and meet-closed subset containing ``S``."""
    members = list(dict.fromkeys(S))
    if not members:
        raise ValueError("generating set must be nonempty")
    have = set(members)
    jt, mt = L.join_table, L.meet_table
    i = 0
    while i < len(members):
        x = members[i]
        for y in members[: i + 1]:
            for z in (jt[x][y], mt[x][y]):
                if z not in have:
                    have.add(z)
                    members.append(z)
        i += 1
    return frozenset(have)


def join_irreducibles(L: FiniteLattice) -> ElementSet:
    return frozenset(x for x in range(L.n) if len(L.lower_covers[x]) == 1)


def meet_irreducibles(L: FiniteLattice) -> ElementSet:
    return frozenset(x for x in range(L.n) if len(L.upper_covers[x]) == 1)


# ---------------------------------------------------------------------------
# isomorphism


def _signature(up: Sequence[int], down: Sequence[int], lower, upper) -> list[tuple]:
    n = len(up)
    base = [(popcount(down[x]), popcount(up[x]), len(lower[x]), len(upper[x])) for x in range(n)]
    refined = [
        (base[x], tuple(sorted(base[c] for c in lower[x])), tuple(sorted(base[c] for c in upper[x])))
        for x in range(n)
    ]
    return refined


def _order_iso(a: Poset | FiniteLattice, b: Poset | FiniteLattice, pinned=None) -> tuple[int, ...] | None:
    n = len(a.up)
    if n != len(b.up):
        return None
    sig_a = _signature(a.up, a.down, a.lower_covers, a.upper_covers)
    sig_b = _signature(b.up, b.down, b.lower_covers, b.upper_covers)
    if sorted(sig_a) != sorted(sig_b):
        return None
    pinned = dict(pinned or {})
    for x, y in pinned.items():
        if sig_a[x] != sig_b[y]:
            return None
    by_sig: dict[tuple, list[int]] = defaultdict(list)
    for y in range(n):
        by_sig[sig_b[y]].append(y)
    # linear extension: every lower cover is placed before the element
    order = sorted(range(n), key=lambda x: (popcount(a.down[x]), x))
    lower_a, lower_b = a.lower_covers, b.lower_covers
    upper_b = b.upper_covers
    lower_b_sets = [frozenset(c) for c in lower_b]
    f = [-1] * n
    used = [False] * n

    def candidates(x: int) -> list[int]:
        if x in pinned:
            return [pinned[x]]
        lc = lower_a[x]
        if not lc:
            return by_sig[sig_a[x]]
        pool = set(upper_b[f[lc[0]]])
        for c in lc[1:]:
            pool &= set(upper_b[f[c]])
        return sorted(pool)

    def place(i: int) -> bool:
        if i == n:
            return True
        x = order[i]
        want = frozenset(f[c] for c in lower_a[x])
        for y in candidates(x):
            if used[y] or sig_b[y] != sig_a[x] or lower_b_sets[y] != want:
                continue
            f[x] = y
            used[y] = True
            if place(i + 1):
                return True
            used[y] = False
        f[x] = -1
        return False

    if place(0):
        return tuple(f)
    return None


def is_isomorphic(L1: FiniteLattice, L2: FiniteLattice, pinned: Mapping[int, int] | None = None,
                  cap: int | None = None) -> tuple[int, ...] | None:
    """A join/meet-preserving bijection ``L1 -> L2`` (as a tuple), or ``None``.

    ``pinned`` fixes the images of selected elements.  Raises ``SizeGuard``
    when either lattice exceeds the search bound (``LATKIT_CAP``, default 64).
    """
    cap = limits().search_cap if cap is None else cap
    if L1.n > cap or L2.n > cap:
        raise SizeGuard(f"isomorphism search limited to {cap} elements (got {L1.n} and {L2.n})")
    return _order_iso(L1, L2, pinned)


def posets_isomorphic(P1: Poset, P2: Poset) -> tuple[int, ...] | None:
    return _order_iso(P1, P2)


# ---------------------------------------------------------------------------
# Birkhoff duality


def distributive_violation(L: FiniteLattice) -> tuple[int, int, int] | None:
    """Lowest triple with ``x ^ (y v z) != (x ^ y) v (x ^ z)``."""
    J, M = L.join_array, L.meet_array
    left = M[np.arange(L.n)[:, None, None], J[None, :, :]]
    right = J[M[:, :, None], M[:, None, :]]
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return None
    x, y, z = bad[0]
    return int(x), int(y), int(z)


def birkhoff_poset(L: FiniteLattice) -> Poset:
    """The poset of join-irreducibles of a distributive lattice."""
    if distributive_violation(L) is not None:
        raise NotDistributive("Birkhoff representation needs a distributive lattice")
    ji = sorted(join_irreducibles(L))
    pos = {x: i for i, x in enumerate(ji)}
    pairs = [(pos[x], pos[y]) for x in ji for y in ji if L.leq(x, y)]
    return Poset.from_pairs(len(ji), pairs, names=[L.names[x] for x in ji], origin=tuple(ji))


def downset_lattice(P: Poset, meta=None) -> FiniteLattice:
    """The lattice of down-sets of ``P`` ordered by inclusion."""
    ds = P.downsets()
    up = []
    for d in ds:
        mask = 0
        for j, e in enumerate(ds):
            if d & e == d:
                mask |= 1 << j
        up.append(mask)
    names = ["{" + ",".join(P.names[x] for x in bits(d)) + "}" for d in ds]
    return from_up_masks(up, names=names, meta=meta)


# ---------------------------------------------------------------------------
# enumeration up to isomorphism


def _poset_key(P: Poset) -> tuple:
    return tuple(sorted(_signature(P.up, P.down, P.lower_covers, P.upper_covers)))


def _extend_by_maximal(P: Poset, below: int) -> Poset:
    k = P.n
    up = list(P.up)
    for x in bits(below):
        up[x] |= 1 << k
    up.append(1 << k)
    return Poset(tuple(up), tuple(str(i) for i in range(k + 1)))


def poset_levels(max_size: int, max_downsets: int | None = None) -> list[list[Poset]]:
    """Posets of every size ``0..max_size``, one per isomorphism class.

    Every poset arises from a smaller one by adding a maximal element above
    some down-set; candidates are deduplicated by invariant bucket plus an
    exact isomorphism test.  With ``max_downsets`` only posets having at most
    that many down-sets are kept (removing a maximal element never increases
    the count, so the pruning is exact).
    """
    levels = [[Poset((), ())]]
    for _ in range(max_size):
        buckets: dict[tuple, list[Poset]] = defaultdict(list)
        fresh: list[Poset] = []
        for P in levels[-1]:
            for d in P.downsets():
                Q = _extend_by_maximal(P, d)
                if max_downsets is not None and len(Q.downsets()) > max_downsets:
                    continue
                bucket = buckets[_poset_key(Q)]
                if any(_order_iso(Q, R) is not None for R in bucket):
                    continue
                bucket.append(Q)
                fresh.append(Q)
        levels.append(fresh)
    return levels


def enumerate_posets(n: int) -> list[Poset]:
    return poset_levels(n)[n]


def _bounded_extension(Q: Poset) -> list[int]:
    """Up-masks of ``Q`` with a new bottom (index 0) and top (last index)."""
    m = Q.n
    top = m + 1
    full = (1 << (m + 2)) - 1
    up = [full]
    for x in range(m):
        up.append((Q.up[x] << 1) | (1 << top))
    up.append(1 << top)
    return up


def enumerate_lattices(n: int, cap: int | None = None) -> Iterator[FiniteLattice]:
    """One lattice per isomorphism class with exactly ``n`` elements.

    Lattices of size ``n >= 2`` are bounded posets, so they correspond to
    posets on ``n - 2`` elements whose bounded extension has all joins and
    meets.  Isomorphism classes of the middle posets and of the lattices
    coincide, so no second deduplication is needed.
    """
    cap = limits().enumerate_cap if cap is None else cap
    if n > cap:
        raise CapExceeded(f"lattice enumeration capped at {cap} elements")
    if n < 1:
        return
    if n == 1:
        yield from_up_masks([1])
        return
    for Q in enumerate_posets(n - 2):
        up = _bounded_extension(Q)
        try:
            yield from_up_masks(up)
        except NotALattice:
            continue


def enumerate_distributive(n: int, cap: int | None = None) -> Iterator[FiniteLattice]:
    """One distributive lattice per isomorphism class with exactly ``n`` elements.

    Distributive lattices of size ``n`` are the down-set lattices of posets
    with exactly ``n`` down-sets.
    """
    cap = limits().distributive_enumerate_cap if cap is None else cap
    if n > cap:
        raise CapExceeded(f"distributive enumeration capped at {cap} elements")
    if n < 1:
        return
    for level in poset_levels(n - 1, max_downsets=n):
        for P in level:
            if len(P.downsets()) == n:
                yield downset_lattice(P)


def lattices_up_to(n: int, distributive_only: bool = False) -> list[FiniteLattice]:
    out: list[FiniteLattice] = []
    for k in range(1, n + 1):
        if distributive_only:
            out.extend(enumerate_distributive(k))
        else:
            out.extend(enumerate_lattices(k, cap=max(n, limits().enumerate_cap)))
    return out


def antichains(L: FiniteLattice | Poset, within: Iterable[int] | None = None) -> Iterator[tuple[int, ...]]:
    """All nonempty antichains (brute force, for small oracles)."""
    pool = sorted(within) if within is not None else list(range(len(L.up)))
    for r in range(1, len(pool) + 1):
        for combo in combinations(pool, r):
            if all(not (L.up[x] >> y & 1) and not (L.up[y] >> x & 1) for x, y in combinations(combo, 2)):
                yield combo
