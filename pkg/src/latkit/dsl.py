"""Construction expressions, e.g. ``linsum(1, boolean(3), product(chain(2), chain(4)))``.

Grammar::

    expr  := INT | NAME | NAME "(" [arg ("," arg)*] ")"
    arg   := expr | NAME "=" value | list
    list  := "[" [item ("," item)*] "]"
    item  := list | INT | NAME | STRING

A bare integer ``n`` means ``chain(n)`` and a bare name a fixture.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

from . import constructors as C
from .congruence import generated_congruence, quotient
from .core import FiniteLattice, Poset
from .doubling import DoublingSpec, day_double
from .errors import LatticeError, ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<str>\"(?:[^\"\\]|\\.)*\")|(?P<punct>[(),\[\]=]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: Any
    pos: int


@dataclass(frozen=True)
class _Call:
    name: str
    args: tuple
    kwargs: tuple
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        raw = m.group(kind)
        if kind == "int":
            value: Any = int(raw)
        elif kind == "str":
            value = bytes(raw[1:-1], "utf-8").decode("unicode_escape")
        else:
            value = raw
        out.append(_Tok(kind, value, m.start(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def pos(self) -> int:
        t = self.peek()
        return t.pos if t else len(self.text)

    def take(self, value: str | None = None) -> _Tok:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression", len(self.text))
        if value is not None and t.value != value:
            raise ParseError(f"expected {value!r}, found {t.value!r}", t.pos)
        self.i += 1
        return t

    def at(self, value: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == "punct" and t.value == value

    def expr(self):
        t = self.take()
        if t.kind == "int":
            return _Call("chain", (t.value,), (), t.pos)
        if t.kind != "name":
            raise ParseError(f"expected a construction, found {t.value!r}", t.pos)
        if not self.at("("):
            return _Call(t.value, (), (), t.pos)
        self.take("(")
        args, kwargs = [], []
        if not self.at(")"):
            while True:
                nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
                tok = self.peek()
                if tok is not None and tok.kind == "name" and nxt is not None and nxt.value == "=":
                    self.i += 2
                    kwargs.append((tok.value, self.value(), tok.pos))
                elif self.at("["):
                    args.append(self.listing())
                else:
                    args.append(self.expr())
                if self.at(","):
                    self.take(",")
                    continue
                break
        self.take(")")
        return _Call(t.value, tuple(args), tuple(kwargs), t.pos)

    def value(self):
        if self.at("["):
            return self.listing()
        t = self.peek()
        if t is not None and t.kind == "name" and t.value in ("true", "false"):
            self.i += 1
            return t.value == "true"
        if t is not None and t.kind in ("int", "str"):
            self.i += 1
            return t.value
        return self.expr()

    def listing(self) -> list:
        self.take("[")
        items = []
        while not self.at("]"):
            if self.at("["):
                items.append(self.listing())
            else:
                t = self.take()
                if t.kind == "punct":
                    raise ParseError(f"unexpected {t.value!r} in list", t.pos)
                items.append(t.value)
            if self.at(","):
                self.take(",")
            elif not self.at("]"):
                raise ParseError("expected ',' or ']'", self.pos())
        self.take("]")
        return items


def _element(L: FiniteLattice, ref) -> int:
    if isinstance(ref, int) and str(ref) not in L.names:
        return L.element(ref)
    try:
        return L.element(str(ref))
    except KeyError:
        raise ParseError(f"no element named {ref!r}") from None


def _int(call: _Call, k: int) -> int:
    if len(call.args) <= k or not isinstance(call.args[k], _Call) or call.args[k].name != "chain":
        raise ParseError(f"{call.name} expects an integer argument", call.pos)
    # integers were read as chain(n) calls
    return call.args[k].args[0]


def _eval(node):
    if not isinstance(node, _Call):
        raise ParseError(f"expected a construction, found {node!r}")
    name, args, kwargs = node.name, node.args, dict((k, v) for k, v, _ in node.kwargs)
    if name == "chain" and args and isinstance(args[0], int):
        return C.chain(args[0])
    if name in ("chain", "boolean", "fd"):
        n = _int(node, 0)
        return {"chain": C.chain, "boolean": C.boolean, "fd": C.free_distributive}[name](n)
    if name == "product":
        if len(args) < 2:
            raise ParseError("product needs at least two factors", node.pos)
        out = _eval(args[0])
        for a in args[1:]:
            out = C.product(out, _eval(a))
        return out
    if name == "linsum":
        if not args:
            raise ParseError("linsum needs at least one block", node.pos)
        return C.linear_sum([_eval(a) for a in args])
    if name == "lexsum":
        if not args or not isinstance(args[0], list):
            raise ParseError("lexsum expects an index cover list followed by blocks", node.pos)
        blocks = [_eval(a) for a in args[1:]]
        index = Poset.from_pairs(len(blocks), [tuple(p) for p in args[0]])
        return C.lexicographic_sum(index, blocks)
    if name == "two_by_z":
        lo, hi = _int(node, 0), _int(node, 1)
        return C.two_by_z_window(lo, hi, dual=bool(kwargs.get("dual", False))).lattice
    if name == "double":
        if len(args) != 1 or "region" not in kwargs:
            raise ParseError("double expects a lattice and region=[...]", node.pos)
        L = _eval(args[0])
        region = {_element(L, r) for r in kwargs["region"]}
        spec = DoublingSpec(L, region, bool(kwargs.get("interval", False)))
        return day_double(spec).lattice
    if name == "quotient":
        if len(args) != 2 or not isinstance(args[1], list):
            raise ParseError("quotient expects a lattice and a list of pairs", node.pos)
        L = _eval(args[0])
        pairs = [(_element(L, a), _element(L, b)) for a, b in args[1]]
        return quotient(L, generated_congruence(L, pairs))[0]
    if name in C.FIXTURES and not args:
        return C.fixture(name)
    raise ParseError(f"unknown construction {name!r}", node.pos)


def parse_construction(text: str) -> FiniteLattice:
    p = _Parser(text)
    node = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek().value!r}", p.peek().pos)
    try:
        return _eval(node)
    except (ParseError, LatticeError):
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(str(exc), node.pos) from exc
