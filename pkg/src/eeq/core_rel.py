"""Equivalence relations on N presented by stages.

A :class:`RelationSpec` is a syntax tree.  For every stage ``s`` it denotes a
decidable equivalence relation, computed here as a *key function*: two numbers
are related at stage ``s`` exactly when their keys are equal.  The key
function is defined on all of N, so relatedness of large images never needs a
larger materialized universe.  :func:`approximant` restricts the stage
relation to ``[0, n)`` and canonicalizes each class by its least element.

Stage conventions:

* ``ExplicitList`` pairs and ``StageTrace`` events stamped ``t`` are in force
  at every stage ``s >= t``.
* ``FunRange(h)`` and ``Coequalizer`` have a budget of ``s`` inputs at stage
  ``s``: they contribute the pairs generated from ``x < s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Sequence

from .errors import ScopeError
from .funlang import Add, Const, FunExpr, Id, Table, compile_fun
from .pairing import cantor_proj
from .unionfind import UnionFind

Key = Callable[[int], Hashable]


# -- stage traces -------------------------------------------------------------


@dataclass(frozen=True)
class Merge:
    x: int
    y: int
    stage: int


@dataclass(frozen=True)
class Isolate:
    x: int
    stage: int


@dataclass(frozen=True)
class EnumU:
    x: int
    stage: int


Event = Merge | Isolate | EnumU


@dataclass(frozen=True)
class StageTrace:
    """Ordered stage events; stages never decrease along the trace."""

    events: tuple[Event, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        last = 0
        isolated: set[int] = set()
        for ev in self.events:
            if ev.stage < last:
                raise ValueError(f"trace stages must be non-decreasing: {ev} after stage {last}")
            last = ev.stage
            if isinstance(ev, Isolate):
                if ev.x in isolated:
                    raise ValueError(f"{ev.x} is already a singleton when isolated at stage {ev.stage}")
                isolated.add(ev.x)

    def __len__(self) -> int:
        return len(self.events)

    def upto(self, s: int) -> tuple[Event, ...]:
        return tuple(ev for ev in self.events if ev.stage <= s)

    def merges(self, s: int) -> list[tuple[int, int]]:
        return [(ev.x, ev.y) for ev in self.upto(s) if isinstance(ev, Merge)]

    def isolated(self, s: int) -> frozenset[int]:
        return frozenset(ev.x for ev in self.upto(s) if isinstance(ev, Isolate))

    def enumerated(self, s: int) -> list[int]:
        return [ev.x for ev in self.upto(s) if isinstance(ev, EnumU)]

    @property
    def last_stage(self) -> int:
        return self.events[-1].stage if self.events else 0


# -- pair sources -------------------------------------------------------------


class PairSource:
    __slots__ = ()

    def pairs(self, s: int) -> list[tuple[int, int]]:
        raise NotImplementedError


@dataclass(frozen=True)
class ExplicitList(PairSource):
    """Pairs ``(a, b, stage)``; each is in force from its stage on."""

    items: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        items = tuple((int(a), int(b), int(t)) for a, b, t in self.items)
        stamps = [t for _, _, t in items]
        if stamps != sorted(stamps):
            raise ValueError("stage stamps must be non-decreasing along the list")
        if any(v < 0 for item in items for v in item):
            raise ValueError("pairs and stamps must be naturals")
        object.__setattr__(self, "items", items)

    def pairs(self, s: int) -> list[tuple[int, int]]:
        return [(a, b) for a, b, t in self.items if t <= s]


@dataclass(frozen=True)
class FunRange(PairSource):
    """Input ``x`` contributes ``cantor_proj(h(x))``; stage ``s`` has seen ``x < s``."""

    h: FunExpr

    def pairs(self, s: int) -> list[tuple[int, int]]:
        f = compile_fun(self.h)
        return [cantor_proj(f(x)) for x in range(s)]


@dataclass(frozen=True)
class TraceBacked(PairSource):
    trace: StageTrace

    def pairs(self, s: int) -> list[tuple[int, int]]:
        if any(isinstance(ev, Isolate) for ev in self.trace.events):
            raise ValueError("a pair-generating trace cannot contain isolate events")
        return self.trace.merges(s)


# -- relation specs -----------------------------------------------------------


class RelationSpec:
    __slots__ = ()


@dataclass(frozen=True)
class IdAll(RelationSpec):
    """Equality."""


@dataclass(frozen=True)
class IdN(RelationSpec):
    """Congruence modulo ``n``; exactly ``n`` classes."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("IdN requires n >= 1")


@dataclass(frozen=True)
class Kernel(RelationSpec):
    """``x ~ y`` iff ``labels(x) == labels(y)``."""

    labels: FunExpr


@dataclass(frozen=True)
class FromPairs(RelationSpec):
    """The ceer generated by an enumerated list of pairs."""

    source: PairSource


@dataclass(frozen=True)
class Coceer(RelationSpec):
    """Seed partition (kernel of ``seed``) from which isolate events carve singletons."""

    seed: FunExpr
    extraction: TraceBacked

    def __post_init__(self):
        if any(isinstance(ev, Merge) for ev in self.extraction.trace.events):
            raise ValueError("a coceer trace may only isolate elements, never merge them")


@dataclass(frozen=True)
class Product(RelationSpec):
    left: RelationSpec
    right: RelationSpec


@dataclass(frozen=True)
class Coproduct(RelationSpec):
    """Uniform join: ``left`` on even codes, ``right`` on odd codes."""

    left: RelationSpec
    right: RelationSpec


@dataclass(frozen=True)
class Coequalizer(RelationSpec):
    """Closure of ``base`` with the pairs ``(f1(x), f2(x))``."""

    base: RelationSpec
    f1: FunExpr
    f2: FunExpr


@dataclass(frozen=True)
class ClosureOf(RelationSpec):
    base: RelationSpec
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in self.pairs))


#: Two classes, ``{0}`` and everything else.
ZERO_REST_SEED: FunExpr = Table({0: 0}, Const(1))


def seed_from_classes(classes: Sequence[Iterable[int]], rest: bool = False) -> FunExpr:
    """Label function for a finite seed partition.

    ``classes`` lists finite classes; with ``rest=True`` every unlisted number
    forms one extra class, otherwise unlisted numbers are singletons.
    """
    overrides: dict[int, int] = {}
    for label, cls in enumerate(classes, start=1):
        for x in cls:
            if x in overrides:
                raise ValueError(f"{x} occurs in two seed classes")
            overrides[x] = label
    if rest:
        default: FunExpr = Const(0)
    else:
        default = Add(Id(), Const(len(classes) + 1))
    return Table(overrides, default) if overrides else default


def coceer(seed: FunExpr, trace: StageTrace) -> Coceer:
    return Coceer(seed, TraceBacked(trace))


def kind(rel: RelationSpec) -> str:
    """``static``, ``ceer`` (classes only merge), ``coceer`` (only split) or ``mixed``."""
    if isinstance(rel, (IdAll, IdN, Kernel)):
        return "static"
    if isinstance(rel, FromPairs):
        return "ceer"
    if isinstance(rel, Coceer):
        return "coceer"
    if isinstance(rel, (Product, Coproduct)):
        kinds = {kind(rel.left), kind(rel.right)} - {"static"}
        return kinds.pop() if len(kinds) == 1 else ("static" if not kinds else "mixed")
    if isinstance(rel, Coequalizer):
        base = kind(rel.base)
        return "ceer" if base in ("static", "ceer") else "mixed"
    if isinstance(rel, ClosureOf):
        base = kind(rel.base)
        return "static" if base == "static" else base
    raise TypeError(f"not a relation spec: {rel!r}")


# -- stage semantics ----------------------------------------------------------


def _closure_key(base: Key, pairs: Iterable[tuple[int, int]]) -> Key:
    uf = UnionFind()
    for a, b in pairs:
        uf.union(base(a), base(b))
    if len(uf) == 0:
        return base

    def key(x: int) -> Hashable:
        k = base(x)
        return uf.find(k) if k in uf else k

    return key


@lru_cache(maxsize=2048)
def stage_key(rel: RelationSpec, s: int) -> Key:
    """Key function of the stage-``s`` relation, valid on all of N."""
    if s < 0:
        raise ValueError("stages are naturals")
    if isinstance(rel, IdAll):
        return lambda x: x
    if isinstance(rel, IdN):
        k = rel.n
        return lambda x: x % k
    if isinstance(rel, Kernel):
        return compile_fun(rel.labels)
    if isinstance(rel, FromPairs):
        return _closure_key(lambda x: x, rel.source.pairs(s))
    if isinstance(rel, Coceer):
        iso = rel.extraction.trace.isolated(s)
        label = compile_fun(rel.seed)
        return lambda x: ("iso", x) if x in iso else label(x)
    if isinstance(rel, Product):
        kl, kr = stage_key(rel.left, s), stage_key(rel.right, s)

        def key(z: int) -> Hashable:
            x, y = cantor_proj(z)
            return kl(x), kr(y)

        return key
    if isinstance(rel, Coproduct):
        kl, kr = stage_key(rel.left, s), stage_key(rel.right, s)
        return lambda z: (1, kr(z >> 1)) if z & 1 else (0, kl(z >> 1))
    if isinstance(rel, Coequalizer):
        f1, f2 = compile_fun(rel.f1), compile_fun(rel.f2)
        return _closure_key(stage_key(rel.base, s), ((f1(x), f2(x)) for x in range(s)))
    if isinstance(rel, ClosureOf):
        return _closure_key(stage_key(rel.base, s), rel.pairs)
    raise TypeError(f"not a relation spec: {rel!r}")


def related(rel: RelationSpec, s: int, x: int, y: int) -> bool:
    """Exact stage-``s`` relatedness at any two points."""
    key = stage_key(rel, s)
    return x == y or key(x) == key(y)


@dataclass(frozen=True)
class Approximant:
    """The partition of ``[0, n)`` induced by a relation at stage ``s``.

    ``reps[x]`` is the least element of the class of ``x``.  ``isolated``
    holds the coceer singletons carved out below ``n`` and ``outside`` counts
    generated pairs with an endpoint ``>= n`` (they are honored, not dropped).
    """

    n: int
    s: int
    reps: tuple[int, ...]
    isolated: frozenset[int] = frozenset()
    outside: int = 0

    def _check(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise ScopeError(f"{x} lies outside [0, {self.n})")

    def find(self, x: int) -> int:
        self._check(x)
        return self.reps[x]

    def related(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, r in enumerate(self.reps):
            out.setdefault(r, []).append(x)
        return [out[r] for r in sorted(out)]

    def canonical_reps(self) -> list[int]:
        return sorted(set(self.reps))

    @property
    def classes_count(self) -> int:
        return len(set(self.reps))

    def same_partition(self, other: "Approximant") -> bool:
        return self.n == other.n and self.reps == other.reps

    def refines(self, other: "Approximant") -> bool:
        """Every class of ``self`` lies inside a class of ``other``."""
        if self.n != other.n:
            raise ScopeError("approximants over different bounds")
        return all(other.reps[r] == other.reps[x] for x, r in enumerate(self.reps))

    def pairs(self) -> set[tuple[int, int]]:
        out = set()
        for cls in self.classes():
            out.update((a, b) for a in cls for b in cls)
        return out


def _partition(key: Key, n: int) -> tuple[int, ...]:
    first: dict[Hashable, int] = {}
    return tuple(first.setdefault(key(x), x) for x in range(n))


def _outside(rel: RelationSpec, s: int, n: int) -> int:
    if isinstance(rel, Coequalizer):
        f1, f2 = compile_fun(rel.f1), compile_fun(rel.f2)
        return sum(1 for x in range(s) if f1(x) >= n or f2(x) >= n)
    if isinstance(rel, FromPairs):
        return sum(1 for a, b in rel.source.pairs(s) if a >= n or b >= n)
    if isinstance(rel, ClosureOf):
        return sum(1 for a, b in rel.pairs if a >= n or b >= n)
    return 0


def approximant(rel: RelationSpec, s: int, n: int) -> Approximant:
    if n < 1:
        raise ScopeError("the bound n must be at least 1")
    iso = frozenset()
    if isinstance(rel, Coceer):
        iso = frozenset(x for x in rel.extraction.trace.isolated(s) if x < n)
    return Approximant(n, s, _partition(stage_key(rel, s), n), iso, _outside(rel, s, n))


def equivalence_closure(pairs: Iterable[tuple[int, int]], n: int) -> Approximant:
    """Least equivalence relation on ``[0, n)`` containing ``pairs``."""
    if n < 1:
        raise ScopeError("the bound n must be at least 1")
    uf = UnionFind(range(n))
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ScopeError(f"pair ({a}, {b}) lies outside [0, {n})")
        uf.union(a, b)
    return Approximant(n, 0, _partition(uf.find, n))


def _bounds(n: int, *points: int) -> None:
    for p in points:
        if not 0 <= p < n:
            raise ScopeError(f"{p} lies outside [0, {n})")


def related_at(rel: RelationSpec, s: int, n: int, x: int, y: int) -> bool:
    _bounds(n, x, y)
    return related(rel, s, x, y)


def classes_count(rel: RelationSpec, s: int, n: int) -> int:
    return approximant(rel, s, n).classes_count


def canonical_reps(rel: RelationSpec, s: int, n: int) -> list[int]:
    return approximant(rel, s, n).canonical_reps()


def stabilized(rel: RelationSpec, s: int, n: int) -> bool:
    """True iff the ``[0, n)`` approximant does not change from stage s to s+1.

    A semi-decision aid only: later stages may still change.
    """
    return approximant(rel, s, n).same_partition(approximant(rel, s + 1, n))
