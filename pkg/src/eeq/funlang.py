"""A closed language of total functions N -> N.

Every term denotes a total function: there is no recursion and no unbounded
search, so evaluation always terminates.  Terms are immutable and hashable,
which lets relation specs and morphisms use them as dictionary keys.

Concrete syntax (keywords are case-insensitive, whitespace is ignored)::

    expr := id | succ | double | odd1 | half | proj0 | proj1
          | const NAT | mod NAT
          | pair(expr, expr) | compose(expr, expr)
          | add(expr, expr) | mul(expr, expr)
          | ifless(expr, expr, expr, expr)
          | table{ NAT->NAT ... } else expr

``odd1`` is x -> 2x+1 and ``ifless(f, g, a, b)`` is ``a(x) if f(x) < g(x) else b(x)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields
from functools import lru_cache
from typing import Callable, Iterator, Mapping

from .errors import OverflowFault, ParseError
from .pairing import WORD_LIMIT, cantor_pair, cantor_proj, check_word


class FunExpr:
    """Base class of all function terms."""

    __slots__ = ()

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, repr=False)
class _Leaf(FunExpr):
    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class Id(_Leaf):
    pass


class Succ(_Leaf):
    pass


class Double(_Leaf):
    pass


class DoublePlus1(_Leaf):
    pass


class Half(_Leaf):
    pass


class Proj0(_Leaf):
    pass


class Proj1(_Leaf):
    pass


@dataclass(frozen=True)
class Const(FunExpr):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("Const takes a natural number")


@dataclass(frozen=True)
class Mod(FunExpr):
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("Mod requires k >= 1")


@dataclass(frozen=True)
class Pair(FunExpr):
    left: FunExpr
    right: FunExpr


@dataclass(frozen=True)
class Compose(FunExpr):
    """``outer(inner(x))``."""

    outer: FunExpr
    inner: FunExpr


@dataclass(frozen=True)
class Add(FunExpr):
    left: FunExpr
    right: FunExpr


@dataclass(frozen=True)
class Mul(FunExpr):
    left: FunExpr
    right: FunExpr


@dataclass(frozen=True)
class IfLess(FunExpr):
    lhs: FunExpr
    rhs: FunExpr
    then: FunExpr
    other: FunExpr


@dataclass(frozen=True)
class Table(FunExpr):
    """Finitely many overridden values on top of a default function.

    ``overrides`` may be given as a mapping; it is stored as a sorted tuple of
    ``(input, output)`` pairs so the term stays hashable.
    """

    overrides: tuple[tuple[int, int], ...]
    default: FunExpr

    def __post_init__(self):
        items = self.overrides.items() if isinstance(self.overrides, Mapping) else self.overrides
        norm = tuple(sorted((int(k), int(v)) for k, v in items))
        keys = [k for k, _ in norm]
        if len(set(keys)) != len(keys):
            raise ValueError("Table overrides must have distinct inputs")
        if any(k < 0 or v < 0 for k, v in norm):
            raise ValueError("Table overrides must be naturals")
        object.__setattr__(self, "overrides", norm)

    def as_dict(self) -> dict[int, int]:
        return dict(self.overrides)


def children(e: FunExpr) -> tuple[FunExpr, ...]:
    return tuple(getattr(e, f.name) for f in fields(e) if isinstance(getattr(e, f.name), FunExpr))


def size(e: FunExpr) -> int:
    """Number of nodes in the term (a Table counts one node plus its default)."""
    return 1 + sum(size(c) for c in children(e))


def subterms(e: FunExpr) -> Iterator[FunExpr]:
    yield e
    for c in children(e):
        yield from subterms(c)


# -- evaluation ---------------------------------------------------------------


@lru_cache(maxsize=8192)
def compile_fun(e: FunExpr) -> Callable[[int], int]:
    """Turn a term into a Python closure; results are checked against the word limit."""
    if isinstance(e, Id):
        return lambda x: x
    if isinstance(e, Succ):
        return lambda x: check_word(x + 1)
    if isinstance(e, Double):
        return lambda x: check_word(2 * x)
    if isinstance(e, DoublePlus1):
        return lambda x: check_word(2 * x + 1)
    if isinstance(e, Half):
        return lambda x: x >> 1
    if isinstance(e, Proj0):
        return lambda x: cantor_proj(x)[0]
    if isinstance(e, Proj1):
        return lambda x: cantor_proj(x)[1]
    if isinstance(e, Const):
        c = e.value
        return lambda x: c
    if isinstance(e, Mod):
        k = e.k
        return lambda x: x % k
    if isinstance(e, Pair):
        f, g = compile_fun(e.left), compile_fun(e.right)
        return lambda x: cantor_pair(f(x), g(x))
    if isinstance(e, Compose):
        f, g = compile_fun(e.outer), compile_fun(e.inner)
        return lambda x: f(g(x))
    if isinstance(e, Add):
        f, g = compile_fun(e.left), compile_fun(e.right)
        return lambda x: check_word(f(x) + g(x))
    if isinstance(e, Mul):
        f, g = compile_fun(e.left), compile_fun(e.right)
        return lambda x: check_word(f(x) * g(x))
    if isinstance(e, IfLess):
        f, g = compile_fun(e.lhs), compile_fun(e.rhs)
        a, b = compile_fun(e.then), compile_fun(e.other)
        return lambda x: a(x) if f(x) < g(x) else b(x)
    if isinstance(e, Table):
        table = e.as_dict()
        d = compile_fun(e.default)
        return lambda x: table[x] if x in table else d(x)
    raise TypeError(f"not a function term: {e!r}")


def evaluate(e: FunExpr, x: int) -> int:
    if x < 0:
        raise ValueError("functions are defined on naturals only")
    if x >= WORD_LIMIT:
        raise OverflowFault(f"input {x} exceeds the word range")
    return compile_fun(e)(x)


# -- printing -----------------------------------------------------------------

_LEAF_NAMES = {
    Id: "id",
    Succ: "succ",
    Double: "double",
    DoublePlus1: "odd1",
    Half: "half",
    Proj0: "proj0",
    Proj1: "proj1",
}
_BINARY_NAMES = {Pair: "pair", Compose: "compose", Add: "add", Mul: "mul"}


def to_text(e: FunExpr) -> str:
    """Canonical concrete syntax; :func:`parse` reads it back."""
    t = type(e)
    if t in _LEAF_NAMES:
        return _LEAF_NAMES[t]
    if t is Const:
        return f"const {e.value}"
    if t is Mod:
        return f"mod {e.k}"
    if t in _BINARY_NAMES:
        a, b = children(e)
        return f"{_BINARY_NAMES[t]}({to_text(a)}, {to_text(b)})"
    if t is IfLess:
        return "ifless({})".format(", ".join(to_text(c) for c in children(e)))
    if t is Table:
        body = " ".join(f"{k}->{v}" for k, v in e.overrides)
        return f"table{{{body}}} else {to_text(e.default)}"
    raise TypeError(f"not a function term: {e!r}")


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"(?P<ws>\s+)|(?P<num>\d+)|(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<arrow>->)|(?P<sym>[(){},])")
_LEAVES = {name: cls for cls, name in _LEAF_NAMES.items()}
_ARITY = {"pair": (Pair, 2), "compose": (Compose, 2), "add": (Add, 2), "mul": (Mul, 2), "ifless": (IfLess, 4)}


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rindex("\n") + 1
        else:
            val = m.group().lower() if kind == "word" else m.group()
            toks.append(_Tok(kind, val, line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            shown = tok.text or "end of input"
            self.fail(f"expected {text!r}, found {shown!r}", tok)
        return tok

    def nat(self) -> int:
        tok = self.next()
        if tok.kind != "num":
            self.fail(f"expected a natural number, found {tok.text or 'end of input'!r}", tok)
        return int(tok.text)

    def expr(self) -> FunExpr:
        tok = self.next()
        if tok.kind != "word":
            self.fail(f"expected a function, found {tok.text or 'end of input'!r}", tok)
        name = tok.text
        if name in _LEAVES:
            return _LEAVES[name]()
        if name == "const":
            return Const(self.nat())
        if name == "mod":
            k_tok = self.peek()
            k = self.nat()
            if k == 0:
                self.fail("mod requires k >= 1", k_tok)
            return Mod(k)
        if name in _ARITY:
            cls, arity = _ARITY[name]
            self.expect("(")
            args = [self.expr()]
            while self.peek().text == ",":
                self.next()
                args.append(self.expr())
            close = self.peek()
            if close.text != ")":
                self.fail(f"expected ',' or ')', found {close.text or 'end of input'!r}")
            if len(args) != arity:
                self.fail(f"arity mismatch: {name} takes {arity} arguments, got {len(args)}", tok)
            self.next()
            return cls(*args)
        if name == "table":
            self.expect("{")
            overrides: dict[int, int] = {}
            while self.peek().text != "}":
                key_tok = self.peek()
                k = self.nat()
                self.expect("->")
                v = self.nat()
                if k in overrides:
                    self.fail(f"duplicate table entry for {k}", key_tok)
                overrides[k] = v
                if self.peek().text == ",":
                    self.next()
            self.expect("}")
            self.expect("else")
            return Table(overrides, self.expr())
        self.fail(f"unknown function {name!r}", tok)


def parse(text: str) -> FunExpr:
    """Parse exactly one term; trailing input is an error."""
    p = _Parser(text)
    e = p.expr()
    if p.peek().kind != "eof":
        p.fail(f"unexpected trailing input {p.peek().text!r}")
    return e


def parse_sequence(text: str) -> list[FunExpr]:
    """Parse consecutive terms separated only by whitespace, e.g. ``const 0 id``."""
    p = _Parser(text)
    out = []
    while p.peek().kind != "eof":
        out.append(p.expr())
    return out
