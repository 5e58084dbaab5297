"""Congruences, quotients and homomorphisms of finite lattices."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .core import FiniteLattice, distributive_violation, from_up_masks
from .errors import CapExceeded, CarrierMismatch, NotAHomomorphism


class NotDistributiveTarget(UserWarning):
    """Generator images live outside the distributive variety."""


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def _close(L: FiniteLattice, uf: _UnionFind, pending: list[tuple[int, int]]) -> None:
    """Merge until every merged pair is stable under joining and meeting with anything."""
    jt, mt = L.join_table, L.meet_table
    n = L.n
    while pending:
        x, y = pending.pop()
        jx, jy, mx, my = jt[x], jt[y], mt[x], mt[y]
        for z in range(n):
            for a, b in ((jx[z], jy[z]), (mx[z], my[z])):
                if uf.union(a, b):
                    pending.append((a, b))


def _labels(uf: _UnionFind, n: int) -> tuple[int, ...]:
    # representative = least element index of the class
    return tuple(uf.find(x) for x in range(n))


@dataclass(frozen=True, eq=False)
class Congruence:
    """A join- and meet-compatible partition; ``labels[x]`` is the least
    index in the class of ``x``."""

    lattice: FiniteLattice
    labels: tuple[int, ...]

    def __post_init__(self):
        bad = _compatibility_violation(self.lattice, self.labels)
        if bad is not None:
            raise ValueError(f"partition is not compatible with join and meet: {bad}")

    @classmethod
    def from_classes(cls, L: FiniteLattice, classes: Iterable[Iterable[int]]) -> "Congruence":
        labels = list(range(L.n))
        seen = set()
        for block in classes:
            block = sorted(block)
            for x in block:
                if x in seen:
                    raise ValueError(f"element {x} appears in two classes")
                seen.add(x)
                labels[x] = block[0]
        return cls(L, tuple(labels))

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        out: dict[int, list[int]] = {}
        for x, r in enumerate(self.labels):
            out.setdefault(r, []).append(x)
        return tuple(tuple(out[r]) for r in sorted(out))

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def __len__(self) -> int:
        return len(self.classes)

    def __le__(self, other: "Congruence") -> bool:
        _same_carrier(self, other)
        return all(other.labels[x] == other.labels[r] for x, r in enumerate(self.labels))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.labels == other.labels and (self.lattice is other.lattice or self.lattice == other.lattice)

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"Congruence(classes={len(self.classes)} of {self.lattice.n})"


def _compatibility_violation(L: FiniteLattice, labels: Sequence[int]):
    jt, mt = L.join_table, L.meet_table
    for x in range(L.n):
        r = labels[x]
        if r == x:
            continue
        for z in range(L.n):
            if labels[jt[x][z]] != labels[jt[r][z]]:
                return ("join", x, r, z)
            if labels[mt[x][z]] != labels[mt[r][z]]:
                return ("meet", x, r, z)
    return None


def _same_carrier(c1: Congruence, c2: Congruence) -> None:
    if c1.lattice is not c2.lattice and c1.lattice != c2.lattice:
        raise CarrierMismatch("congruences live on different lattices")


def identity_congruence(L: FiniteLattice) -> Congruence:
    return Congruence(L, tuple(range(L.n)))


def total_congruence(L: FiniteLattice) -> Congruence:
    return Congruence(L, tuple(0 for _ in range(L.n)))


def generated_congruence(L: FiniteLattice, pairs: Iterable[tuple[int, int]]) -> Congruence:
    uf = _UnionFind(L.n)
    pending = []
    for a, b in pairs:
        if uf.union(a, b):
            pending.append((a, b))
    _close(L, uf, pending)
    return Congruence(L, _labels(uf, L.n))


def principal_congruence(L: FiniteLattice, a: int, b: int) -> Congruence:
    """Smallest congruence identifying ``a`` and ``b``."""
    return generated_congruence(L, [(a, b)])


def congruence_join(c1: Congruence, c2: Congruence) -> Congruence:
    _same_carrier(c1, c2)
    L = c1.lattice
    pairs = [(x, r) for c in (c1, c2) for x, r in enumerate(c.labels) if x != r]
    return generated_congruence(L, pairs)


def quotient(L: FiniteLattice, c: Congruence) -> tuple[FiniteLattice, tuple[int, ...]]:
    """The class lattice and the projection ``L -> L/c``.

    Class ``X <= Y`` iff ``x v y`` lies in ``Y`` for representatives.
    Classes are named after their least element.
    """
    reps = [cls[0] for cls in c.classes]
    pos = {r: i for i, r in enumerate(reps)}
    labels = c.labels
    jt = L.join_table
    up = []
    for x in reps:
        mask = 0
        for j, y in enumerate(reps):
            if labels[jt[x][y]] == y:
                mask |= 1 << j
        up.append(mask)
    meta = {}
    gens = L.meta.get("generators")
    if gens:
        meta["generators"] = {g: pos[labels[i]] for g, i in gens.items()}
    Q = from_up_masks(up, names=[L.names[r] for r in reps], meta=meta)
    projection = tuple(pos[labels[x]] for x in range(L.n))
    return Q, projection


# ---------------------------------------------------------------------------
# homomorphisms


def homomorphism_violation(source: FiniteLattice, target: FiniteLattice, f: Sequence[int]):
    """First ``(op, x, y)`` where ``f`` fails to preserve join or meet."""
    if len(f) != source.n:
        return ("length", len(f), source.n)
    sj, sm, tj, tm = source.join_table, source.meet_table, target.join_table, target.meet_table
    for x in range(source.n):
        fx = f[x]
        for y in range(x, source.n):
            if f[sj[x][y]] != tj[fx][f[y]]:
                return ("join", x, y)
            if f[sm[x][y]] != tm[fx][f[y]]:
                return ("meet", x, y)
    return None


def kernel(source: FiniteLattice, target: FiniteLattice, f: Sequence[int]) -> Congruence:
    """Partition of ``source`` by equal images under the homomorphism ``f``."""
    bad = homomorphism_violation(source, target, f)
    if bad is not None:
        raise NotAHomomorphism(f"map does not preserve {bad[0]} at {bad[1:]}", bad)
    first: dict[int, int] = {}
    labels = tuple(first.setdefault(f[x], x) for x in range(source.n))
    return Congruence(source, labels)


def image(target: FiniteLattice, f: Sequence[int]) -> FiniteLattice:
    return target.restrict(set(f))


def hom_from_generators(source: FiniteLattice, target: FiniteLattice, images: Sequence[int]) -> tuple[int, ...]:
    """Extend ``generator_i -> images[i]`` from FD(n) to all of it.

    Each antichain element is evaluated as the join of the meets of its
    members.  Warns with :class:`NotDistributiveTarget` when the target is
    not distributive, since the universal property then fails in general.
    """
    acs = source.meta.get("antichains")
    if acs is None:
        raise ValueError("source must come from free_distributive()")
    gens = source.meta["generators"]
    if len(images) != len(gens):
        raise ValueError(f"need {len(gens)} generator images, got {len(images)}")
    if distributive_violation(target) is not None:
        warnings.warn("target lattice is not distributive", NotDistributiveTarget, stacklevel=2)
    images = [target.element(i) for i in images]
    out = []
    for A in acs:
        value = None
        for member in A:
            m = target.meet_all(images[i] for i in range(len(images)) if member >> i & 1)
            value = m if value is None else target.join(value, m)
        out.append(value)
    return tuple(out)


def extend_homomorphism(source: FiniteLattice, target: FiniteLattice, partial: dict[int, int]) -> tuple[int, ...] | None:
    """Extend a map on generators of ``source`` along joins and meets.

    Returns the homomorphism when the extension is total and consistent,
    else ``None``.
    """
    f = dict(partial)
    sj, sm, tj, tm = source.join_table, source.meet_table, target.join_table, target.meet_table
    frontier = list(f)
    while frontier:
        x = frontier.pop()
        for y in list(f):
            for s, t in ((sj[x][y], tj[f[x]][f[y]]), (sm[x][y], tm[f[x]][f[y]])):
                if s in f:
                    if f[s] != t:
                        return None
                else:
                    f[s] = t
                    frontier.append(s)
    if len(f) != source.n:
        return None
    total = tuple(f[x] for x in range(source.n))
    if homomorphism_violation(source, target, total) is not None:
        return None
    return total


def all_congruences(L: FiniteLattice, cap: int = 6) -> list[Congruence]:
    """Every congruence, by brute force over set partitions (small lattices only)."""
    if L.n > cap:
        raise CapExceeded(f"congruence enumeration limited to {cap} elements")
    out = []

    def partitions(i: int, labels: list[int]):
        if i == L.n:
            yield tuple(labels)
            return
        for r in sorted(set(labels)):
            labels.append(r)
            yield from partitions(i + 1, labels)
            labels.pop()
        labels.append(i)
        yield from partitions(i + 1, labels)
        labels.pop()

    for labels in partitions(0, []):
        if _compatibility_violation(L, labels) is None:
            out.append(Congruence(L, labels))
    return out
