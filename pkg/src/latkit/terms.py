"""Lattice terms, identity checking, the SD_n identities and a probe-based
explorer for relatively free lattices.

Term syntax: ``^`` is meet, ``v`` is join, and parentheses are required when
the two operators are mixed, e.g. ``x^(y v (x^z))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Mapping, Sequence, Union

import numpy as np

from .core import FiniteLattice
from .errors import ParseError, ProbeOutsideVariety, UnboundVariable
from .predicates import Check


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return _render(self)


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return _render(self)


Term = Union[Var, Join, Meet]
LatticeTerm = Term


def _render(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    op = " v " if isinstance(t, Join) else "^"
    parts = []
    for side in (t.left, t.right):
        if isinstance(side, Var) or type(side) is type(t):
            parts.append(_render(side))
        else:
            parts.append(f"({_render(side)})")
    return op.join(parts)


def join(*ts: Term) -> Term:
    out = ts[0]
    for t in ts[1:]:
        out = Join(out, t)
    return out


def meet(*ts: Term) -> Term:
    out = ts[0]
    for t in ts[1:]:
        out = Meet(out, t)
    return out


def variables(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    return variables(t.left) | variables(t.right)


def size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + size(t.left) + size(t.right)


def depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + max(depth(t.left), depth(t.right))


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<op>\^|\(|\)|=)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("op"):
            toks.append(("op", m.group("op"), m.start("op")))
        else:
            word = m.group("ident")
            kind = "op" if word == "v" else "ident"
            toks.append((kind, word, m.start("ident")))
        pos = m.end()
    return toks


class _TermParser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def pos(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)

    def expect(self, value: str) -> None:
        tok = self.peek()
        if tok is None or tok[1] != value:
            raise ParseError(f"expected {value!r}", self.pos())
        self.i += 1

    def expr(self) -> Term:
        left = self.operand()
        tok = self.peek()
        if tok is None or tok[1] not in ("^", "v"):
            return left
        op = tok[1]
        ctor = Meet if op == "^" else Join
        while tok is not None and tok[1] in ("^", "v"):
            if tok[1] != op:
                raise ParseError("mixed operators need parentheses", tok[2])
            self.i += 1
            left = ctor(left, self.operand())
            tok = self.peek()
        return left

    def operand(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of term", self.pos())
        if tok[0] == "ident":
            self.i += 1
            return Var(tok[1])
        if tok[1] == "(":
            self.i += 1
            t = self.expr()
            self.expect(")")
            return t
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse_term(text: str) -> Term:
    p = _TermParser(text)
    t = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek()[1]!r}", p.pos())
    return t


@dataclass(frozen=True)
class IdentitySpec:
    left: Term
    right: Term
    variables: tuple[str, ...] = field(default=())

    def __post_init__(self):
        used = variables(self.left) | variables(self.right)
        if not self.variables:
            object.__setattr__(self, "variables", tuple(sorted(used)))
        elif not used <= set(self.variables):
            raise UnboundVariable(f"identity uses undeclared variables {sorted(used - set(self.variables))}")

    def __str__(self) -> str:
        return f"{self.left} = {self.right}"


def parse_identity(text: str, variables_: Sequence[str] | None = None) -> IdentitySpec:
    if text.count("=") != 1:
        raise ParseError("identity needs exactly one '='", text.find("=") if "=" in text else len(text))
    lhs, rhs = text.split("=")
    return IdentitySpec(parse_term(lhs), parse_term(rhs), tuple(variables_ or ()))


# ---------------------------------------------------------------------------
# evaluation


def evaluate(t: Term, L: FiniteLattice, assignment: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise UnboundVariable(f"no value for variable {t.name!r}") from None
    a = evaluate(t.left, L, assignment)
    b = evaluate(t.right, L, assignment)
    return L.join(a, b) if isinstance(t, Join) else L.meet(a, b)


def _evaluate_vec(t: Term, J: np.ndarray, M: np.ndarray, env: Mapping[str, np.ndarray], memo: dict) -> np.ndarray:
    if t in memo:
        return memo[t]
    if isinstance(t, Var):
        if t.name not in env:
            raise UnboundVariable(f"no value for variable {t.name!r}")
        out = env[t.name]
    else:
        a = _evaluate_vec(t.left, J, M, env, memo)
        b = _evaluate_vec(t.right, J, M, env, memo)
        out = (J if isinstance(t, Join) else M)[a, b]
    memo[t] = out
    return out


def check_identity(L: FiniteLattice, spec: IdentitySpec, max_vars: int = 4) -> Check:
    """Exhaustive check over all assignments; the witness is the
    lexicographically least failing assignment (as a dict)."""
    k = len(spec.variables)
    if k > max_vars:
        raise ValueError(f"identity has {k} variables, limit is {max_vars}")
    grids = np.meshgrid(*([np.arange(L.n)] * k), indexing="ij") if k else []
    env = {v: g.ravel() for v, g in zip(spec.variables, grids)}
    if k == 0:
        env = {}
    memo: dict = {}
    left = _evaluate_vec(spec.left, L.join_array, L.meet_array, env, memo)
    right = _evaluate_vec(spec.right, L.join_array, L.meet_array, env, memo)
    bad = np.flatnonzero(left != right)
    if len(bad) == 0:
        return Check(True)
    i = int(bad[0])
    return Check(False, tuple((v, int(env[v][i])) for v in spec.variables))


# ---------------------------------------------------------------------------
# SD_n

X, Y, Z = Var("x"), Var("y"), Var("z")


def sd_sequence(n: int, polarity: str = "meet") -> tuple[Term, Term]:
    """``(y_n, z_n)`` from ``y_{k+1} = y v (x ^ z_k)``, ``z_{k+1} = z v (x ^ y_k)``
    (operators swapped for the join polarity)."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    outer, inner = (Join, Meet) if polarity == "meet" else (Meet, Join)
    yk, zk = Y, Z
    for _ in range(n):
        yk, zk = outer(Y, inner(X, zk)), outer(Z, inner(X, yk))
    return yk, zk


def sd_identity(n: int, polarity: str = "meet") -> IdentitySpec:
    """``x ^ (y v z) = x ^ y_n`` for ``meet``, its dual for ``join``."""
    if polarity not in ("meet", "join"):
        raise ValueError("polarity must be 'meet' or 'join'")
    yn, _ = sd_sequence(n, polarity)
    if polarity == "meet":
        return IdentitySpec(Meet(X, Join(Y, Z)), Meet(X, yn), ("x", "y", "z"))
    return IdentitySpec(Join(X, Meet(Y, Z)), Join(X, yn), ("x", "y", "z"))


def sd_level(L: FiniteLattice, max_n: int = 6) -> int | None:
    """Least ``n <= max_n`` where both SD_n identities hold, else ``None``."""
    for n in range(max_n + 1):
        if check_identity(L, sd_identity(n, "meet")) and check_identity(L, sd_identity(n, "join")):
            return n
    return None


DISTRIBUTIVE_LAW = IdentitySpec(Meet(X, Join(Y, Z)), Join(Meet(X, Y), Meet(X, Z)), ("x", "y", "z"))
MODULAR_LAW = IdentitySpec(
    Join(Meet(X, Y), Meet(X, Z)), Meet(X, Join(Y, Meet(X, Z))), ("x", "y", "z")
)


def variety_identities(name: str) -> list[IdentitySpec]:
    """Identities for ``distributive``, ``sdNv`` (join), ``sdN^``/``sdNm`` (meet), ``sdN`` (both)."""
    key = name.strip().lower().replace("_", "")
    if key in ("distributive", "d"):
        return [DISTRIBUTIVE_LAW]
    m = re.fullmatch(r"sd(\d+)(v|\^|m|\^\^)?", key)
    if not m:
        raise ValueError(f"unknown variety {name!r}")
    n, pol = int(m.group(1)), m.group(2)
    if pol == "v":
        return [sd_identity(n, "join")]
    if pol in ("^", "m", "^^"):
        return [sd_identity(n, "meet")]
    return [sd_identity(n, "meet"), sd_identity(n, "join")]


def in_variety(L: FiniteLattice, identities: Sequence[IdentitySpec]) -> Check:
    for spec in identities:
        c = check_identity(L, spec)
        if not c:
            return Check(False, (str(spec),) + c.witness)
    return Check(True)


# ---------------------------------------------------------------------------
# relatively free lattices, explored through probes


@dataclass(frozen=True)
class Exploration:
    """Separated-class counts per depth, with one representative term per class."""

    counts: tuple[int, ...]
    representatives: tuple[Term, ...]
    coordinates: int

    @property
    def count(self) -> int:
        return self.counts[-1]


def _marked_signature(L: FiniteLattice, gens: Sequence[int]):
    """Canonical description of the sublattice generated by ``gens``.

    Elements are numbered in a fixed discovery order, so two assignments get
    the same signature exactly when an isomorphism of the generated
    sublattices carries one generator tuple onto the other.
    """
    found: list[int] = []
    pos: dict[int, int] = {}
    gen_ids = []
    for g in gens:
        if g not in pos:
            pos[g] = len(found)
            found.append(g)
        gen_ids.append(pos[g])
    trace = []
    i = 0
    while i < len(found):
        for j in range(i + 1):
            for v in (L.join(found[i], found[j]), L.meet(found[i], found[j])):
                if v not in pos:
                    pos[v] = len(found)
                    found.append(v)
                trace.append(pos[v])
        i += 1
    return (tuple(gen_ids), tuple(trace)), found


def _coordinates(probes: Sequence[FiniteLattice], k: int, dedupe: bool):
    coords = []
    seen = set()
    for L in probes:
        for gens in iproduct(range(L.n), repeat=k):
            if dedupe:
                sig, found = _marked_signature(L, gens)
                if sig in seen:
                    continue
                seen.add(sig)
                local = {x: i for i, x in enumerate(found)}
                s = len(found)
                jt = [[local[L.join(a, b)] for b in found] for a in found]
                mt = [[local[L.meet(a, b)] for b in found] for a in found]
                coords.append((s, jt, mt, [local[g] for g in gens]))
            else:
                coords.append((L.n, L.join_table, L.meet_table, list(gens)))
    return coords


def explore_relatively_free(variety, generators: int, depth_bound: int, probes: Sequence[FiniteLattice],
                            dedupe_coordinates: bool = True) -> Exploration:
    """Lower bounds on the size of a relatively free lattice.

    Terms up to ``depth_bound`` in ``generators`` variables are evaluated in
    every probe under every assignment; two terms are separated when some
    evaluation differs.  Since all probes lie in the variety, the number of
    separated classes is a certified lower bound.  Terms are deduplicated by
    their value vectors, which subsumes normalisation up to commutativity,
    associativity and idempotency.
    """
    identities = variety_identities(variety) if isinstance(variety, str) else list(variety)
    for L in probes:
        ok = in_variety(L, identities)
        if not ok:
            raise ProbeOutsideVariety(f"probe of size {L.n} violates {ok.witness[0]}", ok.witness)
    if generators > 26:
        raise ValueError("too many generators")
    names = "abcdefghijklmnopqrstuvwxyz"[:generators] if generators > 3 else "xyz"[:generators]
    coords = _coordinates(probes, generators, dedupe_coordinates)
    sizes = np.array([c[0] for c in coords], dtype=np.int64)
    base = np.zeros(len(coords), dtype=np.int64)
    if len(coords):
        base[1:] = np.cumsum(sizes * sizes)[:-1]
    jflat = np.concatenate([np.asarray(c[1], dtype=np.int16).ravel() for c in coords]) if coords else np.zeros(0, np.int16)
    mflat = np.concatenate([np.asarray(c[2], dtype=np.int16).ravel() for c in coords]) if coords else np.zeros(0, np.int16)

    vectors: list[np.ndarray] = []
    reps: list[Term] = []
    index: dict[bytes, int] = {}

    def add(vec: np.ndarray, term: Term) -> bool:
        key = vec.tobytes()
        if key in index:
            return False
        index[key] = len(vectors)
        vectors.append(vec)
        reps.append(term)
        return True

    for g in range(generators):
        add(np.array([c[3][g] for c in coords], dtype=np.int16), Var(names[g]))
    counts = [len(vectors)]
    frontier_start = 0
    for _ in range(depth_bound):
        level_end = len(vectors)
        if level_end == 0:
            counts.append(0)
            continue
        V = np.stack(vectors[:level_end]).astype(np.int64)
        everything = np.arange(level_end)
        for i in range(frontier_start, level_end):
            # each new pair has at least one member from the last level
            others = everything[(everything <= i) | (everything < frontier_start)]
            idx = (base + V[i] * sizes)[None, :] + V[others]
            joins = jflat[idx]
            meets = mflat[idx]
            for row, j in enumerate(others):
                add(joins[row], Join(reps[i], reps[j]))
                add(meets[row], Meet(reps[i], reps[j]))
        frontier_start = level_end
        counts.append(len(vectors))
    return Exploration(tuple(counts), tuple(reps), len(coords))
