"""Named lattices: chains, products, sums, free distributive lattices, fixtures.

Also houses the implicit infinite lattice 2 x Z and its finite windows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import product as iproduct
from typing import Sequence

from .config import limits
from .core import FiniteLattice, Poset, bits, from_up_masks, popcount, validate
from .errors import CapExceeded, UnknownFixture

GENERATOR_LETTERS = "abcd"


def _check_cap(size: int, what: str) -> None:
    cap = limits().construct_cap
    if size > cap:
        raise CapExceeded(f"{what} would have {size} elements (cap {cap})")


def chain(n: int) -> FiniteLattice:
    if n < 1:
        raise ValueError("chain length must be at least 1")
    _check_cap(n, f"chain({n})")
    full = (1 << n) - 1
    up = [full & ~((1 << i) - 1) for i in range(n)]
    return from_up_masks(up, names=[str(i) for i in range(n)])


def boolean(n: int) -> FiniteLattice:
    """Subsets of ``{a1..an}``; atom ``ai`` is named ``"ai"`` and the bottom ``"0"``."""
    if n < 0:
        raise ValueError("boolean rank must be nonnegative")
    size = 1 << n
    _check_cap(size, f"boolean({n})")
    up = []
    for s in range(size):
        mask = 0
        for t in range(size):
            if s & t == s:
                mask |= 1 << t
        up.append(mask)
    names = ["".join(f"a{i + 1}" for i in range(n) if s >> i & 1) or "0" for s in range(size)]
    return from_up_masks(up, names=names)


def product(L1: FiniteLattice, L2: FiniteLattice) -> FiniteLattice:
    """Direct product; element ``(x, y)`` has index ``x * |L2| + y``."""
    n1, n2 = L1.n, L2.n
    _check_cap(n1 * n2, "product")
    up = []
    for x in range(n1):
        for y in range(n2):
            mask = 0
            for u in bits(L1.up[x]):
                for v in bits(L2.up[y]):
                    mask |= 1 << (u * n2 + v)
            up.append(mask)
    names = [f"({a},{b})" for a in L1.names for b in L2.names]
    return from_up_masks(up, names=names)


def _sum_names(blocks: Sequence[FiniteLattice]) -> list[str]:
    flat = [name for B in blocks for name in B.names]
    if len(set(flat)) == len(flat):
        return flat
    return [f"{k}.{name}" for k, B in enumerate(blocks) for name in B.names]


def linear_sum(blocks: Sequence[FiniteLattice]) -> FiniteLattice:
    """Stack ``blocks`` so every element of an earlier block lies below every later one."""
    if not blocks:
        raise ValueError("linear_sum needs at least one block")
    total = sum(B.n for B in blocks)
    _check_cap(total, "linear_sum")
    offsets = []
    acc = 0
    for B in blocks:
        offsets.append(acc)
        acc += B.n
    up = []
    for k, B in enumerate(blocks):
        above = ((1 << total) - 1) & ~((1 << (offsets[k] + B.n)) - 1)
        for x in range(B.n):
            up.append((B.up[x] << offsets[k]) | above)
    meta = {"blocks": tuple(B.n for B in blocks)}
    return from_up_masks(up, names=_sum_names(blocks), meta=meta)


def lexicographic_sum(index: Poset, blocks: Sequence[FiniteLattice]) -> FiniteLattice:
    """Replace each point of ``index`` by a block; validated, since the result
    need not be a lattice when ``index`` is not a chain."""
    if len(blocks) != index.n:
        raise ValueError("need exactly one block per index element")
    total = sum(B.n for B in blocks)
    _check_cap(total, "lexicographic_sum")
    offsets = []
    acc = 0
    for B in blocks:
        offsets.append(acc)
        acc += B.n
    pairs = []
    for i, B in enumerate(blocks):
        pairs.extend((offsets[i] + a, offsets[i] + b) for a, b in B.covers)
    for i in range(index.n):
        for j in bits(index.up[i] & ~(1 << i)):
            pairs.extend(
                (offsets[i] + x, offsets[j] + y) for x in range(blocks[i].n) for y in range(blocks[j].n)
            )
    return validate(total, pairs, names=_sum_names(blocks))


# ---------------------------------------------------------------------------
# free distributive lattices


def _antichains_of_subsets(n: int) -> list[tuple[int, ...]]:
    subsets = list(range(1, 1 << n))
    out = []

    def grow(start: int, chosen: list[int]) -> None:
        if chosen:
            out.append(tuple(chosen))
        for i in range(start, len(subsets)):
            s = subsets[i]
            if any(s & c == c or s & c == s for c in chosen):
                continue
            chosen.append(s)
            grow(i + 1, chosen)
            chosen.pop()

    grow(0, [])
    return out


def antichain_leq(A: Sequence[int], B: Sequence[int]) -> bool:
    """``A <= B`` iff each member of ``A`` contains some member of ``B``."""
    return all(any(b & a == b for b in B) for a in A)


def minimal_members(masks) -> tuple[int, ...]:
    ms = set(masks)
    keep = [m for m in ms if not any(o != m and o & m == o for o in ms)]
    return tuple(sorted(keep, key=lambda m: (popcount(m), m)))


def antichain_join(A: Sequence[int], B: Sequence[int]) -> tuple[int, ...]:
    return minimal_members(list(A) + list(B))


def antichain_meet(A: Sequence[int], B: Sequence[int]) -> tuple[int, ...]:
    return minimal_members([a | b for a in A for b in B])


def antichain_name(A: Sequence[int], letters: str = GENERATOR_LETTERS) -> str:
    parts = ["^".join(letters[i] for i in bits(m)) for m in A]
    if len(parts) == 1:
        return parts[0]
    return " v ".join(p if len(p) == 1 else f"({p})" for p in parts)


def free_distributive(n: int) -> FiniteLattice:
    """FD(n) on generators ``a, b, c, d``.

    Elements are antichains of nonempty generator subsets, read as joins of
    meets; ``meta["antichains"][i]`` holds the antichain (as subset bitmasks)
    behind element ``i``.
    """
    if n < 1:
        raise ValueError("need at least one generator")
    cap = limits().fd_generators_cap
    if n > cap:
        raise CapExceeded(f"free_distributive supports at most {cap} generators")
    acs = _antichains_of_subsets(n)
    acs = [tuple(sorted(a, key=lambda m: (popcount(m), m))) for a in acs]
    m = len(acs)
    below = [sum(1 for B in acs if antichain_leq(B, A)) for A in acs]
    order = sorted(range(m), key=lambda i: (below[i], antichain_name(acs[i])))
    acs = [acs[i] for i in order]
    up = []
    for A in acs:
        mask = 0
        for j, B in enumerate(acs):
            if antichain_leq(A, B):
                mask |= 1 << j
        up.append(mask)
    pos = {A: i for i, A in enumerate(acs)}
    gens = {GENERATOR_LETTERS[i]: pos[(1 << i,)] for i in range(n)}
    meta = {"generators": gens, "antichains": tuple(acs), "caption": f"FD({n})"}
    return from_up_masks(up, names=[antichain_name(A) for A in acs], meta=meta)


# ---------------------------------------------------------------------------
# fixtures

FIXTURES = (
    "m3", "n5", "fl_1_2", "gadget_case1", "gadget_case2", "gadget_case3", "gadget_fig5", "fd3",
    "fig2_left", "fig2_middle", "fig2_right",
)


def fixture(name: str) -> FiniteLattice:
    from .io import lattice_from_document

    if name not in FIXTURES:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    text = resources.files("latkit.fixtures").joinpath(f"{name}.json").read_text(encoding="utf-8")
    L = lattice_from_document(json.loads(text))
    meta = dict(L.meta)
    meta["fixture"] = name
    return from_up_masks(L.up, names=L.names, meta=meta)


# ---------------------------------------------------------------------------
# 2 x Z

Coord = tuple[int, int]


@dataclass(frozen=True)
class ImplicitTwoByZ:
    """The infinite lattice 2 x Z (or its order dual), given by coordinates."""

    dual: bool = False

    def leq(self, a: Coord, b: Coord) -> bool:
        if self.dual:
            a, b = b, a
        return a[0] <= b[0] and a[1] <= b[1]

    def lt(self, a: Coord, b: Coord) -> bool:
        return a != b and self.leq(a, b)

    def join(self, a: Coord, b: Coord) -> Coord:
        f = min if self.dual else max
        return (f(a[0], b[0]), f(a[1], b[1]))

    def meet(self, a: Coord, b: Coord) -> Coord:
        f = max if self.dual else min
        return (f(a[0], b[0]), f(a[1], b[1]))

    def covers(self, a: Coord, b: Coord) -> bool:
        """``a`` is covered by ``b``."""
        if self.dual:
            a, b = b, a
        (i, k), (j, m) = a, b
        return (i == 0 and j == 1 and k == m) or (i == j and m == k + 1)

    def cover_pairs(self, lo: int, hi: int) -> set[tuple[Coord, Coord]]:
        pts = [(i, k) for k in range(lo, hi + 1) for i in (0, 1)]
        return {(a, b) for a in pts for b in pts if self.covers(a, b)}

    def window(self, lo: int, hi: int) -> "TwoByZWindow":
        return two_by_z_window(lo, hi, dual=self.dual)


@dataclass(frozen=True, eq=False)
class TwoByZWindow:
    """The finite sublattice ``{(i, k) : lo <= k <= hi}`` of 2 x Z.

    It is a sublattice but not an interval of the whole, so elements in the
    first and last column have covers outside the window; they are listed in
    ``boundary``.
    """

    lattice: FiniteLattice
    coords: tuple[Coord, ...]
    lo: int
    hi: int
    dual: bool = False

    @property
    def boundary(self) -> frozenset[int]:
        return frozenset(i for i, (_, k) in enumerate(self.coords) if k in (self.lo, self.hi))

    def index(self, coord: Coord) -> int:
        return self.coords.index(tuple(coord))

    def __contains__(self, coord) -> bool:
        return tuple(coord) in self.coords


def two_by_z_window(lo: int, hi: int, dual: bool = False) -> TwoByZWindow:
    if lo > hi:
        raise ValueError("window needs lo <= hi")
    host = ImplicitTwoByZ(dual)
    coords = tuple((i, k) for k in range(lo, hi + 1) for i in (0, 1))
    _check_cap(len(coords), "two_by_z window")
    up = []
    for a in coords:
        mask = 0
        for j, b in enumerate(coords):
            if host.leq(a, b):
                mask |= 1 << j
        up.append(mask)
    L = from_up_masks(up, names=[f"({i},{k})" for i, k in coords], meta={"window": (lo, hi)})
    return TwoByZWindow(L, coords, lo, hi, dual)


def atoms(L: FiniteLattice) -> list[int]:
    return sorted(L.upper_covers[L.bottom])


def coatoms(L: FiniteLattice) -> list[int]:
    return sorted(L.lower_covers[L.top])


def product_chains(*lengths: int) -> FiniteLattice:
    """``chain(l1) x chain(l2) x ...`` with names ``"(i,j,...)"``."""
    if not lengths:
        raise ValueError("need at least one chain")
    pts = list(iproduct(*(range(n) for n in lengths)))
    _check_cap(len(pts), "product of chains")
    up = []
    for a in pts:
        mask = 0
        for j, b in enumerate(pts):
            if all(x <= y for x, y in zip(a, b)):
                mask |= 1 << j
        up.append(mask)
    names = ["(" + ",".join(map(str, p)) + ")" for p in pts]
    return from_up_masks(up, names=names)
