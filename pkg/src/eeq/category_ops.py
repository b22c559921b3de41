"""Induced morphisms and the categorical constructions, checked at finite scope.

A scope is a stage ``s`` together with a universe ``[0, n)``.  Every checker
quantifies over the domain ``[0, domain)`` (``domain`` defaults to ``n``) and
answers with a :class:`Verdict`: ``ok`` at that scope, a counterexample, or
``unknown``.  No checker claims a global property.

Images of large size are compared exactly, since stage relations are
decidable pointwise (see :mod:`eeq.core_rel`).  Pass ``strict=True`` to treat
any image ``>= n`` as unknown instead; the verdict then reports the least
``n`` that would have sufficed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Hashable

from . import core_rel as cr
from .core_rel import Coequalizer, Coproduct, IdAll, IdN, Kernel, Product, RelationSpec
from .errors import MorphismError, OverflowFault, ScopeError
from .funlang import (
    Compose,
    Const,
    Double,
    DoublePlus1,
    FunExpr,
    Half,
    Id,
    IfLess,
    Mod,
    Pair,
    Proj0,
    Proj1,
    compile_fun,
)


@dataclass(frozen=True)
class Verdict:
    status: str  # "ok" | "cex" | "unknown"
    s: int
    n: int
    witness: tuple[int, ...] = ()
    missed: tuple[int, ...] = ()
    need_n: int | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    @property
    def exit_code(self) -> int:
        return {"ok": 0, "cex": 1, "unknown": 2}[self.status]

    def __str__(self) -> str:
        if self.status == "ok":
            return f"ok s={self.s} n={self.n}"
        if self.status == "cex":
            if self.missed:
                return "cex missed=" + ",".join(map(str, self.missed))
            return f"cex x={self.witness[0]} y={self.witness[1]}"
        if self.need_n is not None:
            return f"unknown need_n={self.need_n}"
        return f"unknown {self.note}".rstrip()


@dataclass(frozen=True)
class Morphism:
    """The class map induced by ``fun`` from ``source`` to ``target``.

    ``verified_scope`` records the last ``(s, n)`` at which preservation was
    checked; it does not take part in equality.
    """

    source: RelationSpec
    target: RelationSpec
    fun: FunExpr
    verified_scope: tuple[int, int] | None = field(default=None, compare=False)

    def __call__(self, x: int) -> int:
        return compile_fun(self.fun)(x)

    def verified(self, s: int, n: int) -> "Morphism":
        """Check preservation at ``(s, n)``; raise :class:`MorphismError` otherwise."""
        if self.verified_scope == (s, n):
            return self
        v = check_preserving(self.fun, self.source, self.target, s, n)
        if not v.ok:
            raise MorphismError(f"{self.fun} is not preserving at s={s} n={n}: {v}")
        return replace(self, verified_scope=(s, n))


def alpha(fun: FunExpr, source: RelationSpec, target: RelationSpec) -> Morphism:
    return Morphism(source, target, fun)


def identity(rel: RelationSpec) -> Morphism:
    return Morphism(rel, rel, Id())


# -- image tables -------------------------------------------------------------


class _Unknown(Exception):
    def __init__(self, need_n: int | None = None, note: str = ""):
        self.need_n = need_n
        self.note = note


def _images(fun: FunExpr, domain: int, n: int, strict: bool) -> list[int]:
    f = compile_fun(fun)
    out = []
    for x in range(domain):
        try:
            out.append(f(x))
        except OverflowFault:
            raise _Unknown(note=f"overflow_at={x}") from None
    if strict:
        top = max(out, default=0)
        if top >= n:
            raise _Unknown(need_n=top + 1)
    return out


def _unknown(err: _Unknown, s: int, n: int) -> Verdict:
    return Verdict("unknown", s, n, need_n=err.need_n, note=err.note)


def check_preserving(
    f: FunExpr, R: RelationSpec, S: RelationSpec, s: int, n: int, *, domain: int | None = None, strict: bool = False
) -> Verdict:
    """ok iff ``x R_s y`` implies ``f(x) S_s f(y)`` for all ``x, y`` in the domain."""
    d = n if domain is None else domain
    try:
        images = _images(f, d, n, strict)
    except _Unknown as err:
        return _unknown(err, s, n)
    kr, ks = cr.stage_key(R, s), cr.stage_key(S, s)
    seen: dict[Hashable, tuple[int, Hashable]] = {}
    for x, fx in enumerate(images):
        rk = kr(x)
        if rk not in seen:
            seen[rk] = (x, ks(fx))
        else:
            x0, sk = seen[rk]
            if images[x0] != fx and ks(fx) != sk:
                return Verdict("cex", s, n, witness=(x0, x))
    return Verdict("ok", s, n)


def injective_at(
    m: Morphism, s: int, n: int, *, domain: int | None = None, strict: bool = False
) -> Verdict:
    """ok iff ``f(x) S_s f(y)`` implies ``x R_s y``; the witness is two distinct source classes."""
    d = n if domain is None else domain
    try:
        images = _images(m.fun, d, n, strict)
    except _Unknown as err:
        return _unknown(err, s, n)
    kr, ks = cr.stage_key(m.source, s), cr.stage_key(m.target, s)
    seen: dict[Hashable, tuple[int, Hashable]] = {}
    for x, fx in enumerate(images):
        sk = ks(fx)
        if sk not in seen:
            seen[sk] = (x, kr(x))
        else:
            x0, rk = seen[sk]
            if kr(x) != rk:
                return Verdict("cex", s, n, witness=(x0, x))
    return Verdict("ok", s, n)


def surjective_at(
    m: Morphism, s: int, n: int, *, domain: int | None = None, strict: bool = False
) -> Verdict:
    """ok iff every target class meeting ``[0, n)`` contains an image.

    On failure ``missed`` lists the least elements of the missed classes.
    """
    d = n if domain is None else domain
    try:
        images = _images(m.fun, d, n, strict)
    except _Unknown as err:
        return _unknown(err, s, n)
    ks = cr.stage_key(m.target, s)
    hit = {ks(fx) for fx in images}
    missed: dict[Hashable, int] = {}
    for y in range(n):
        k = ks(y)
        if k not in hit and k not in missed:
            missed[k] = y
    if missed:
        return Verdict("cex", s, n, missed=tuple(missed.values()))
    return Verdict("ok", s, n)


def reduction_check(
    f: FunExpr, R: RelationSpec, S: RelationSpec, s: int, n: int, *, domain: int | None = None, strict: bool = False
) -> Verdict:
    """``x R y <=> f(x) S f(y)`` on the domain; ok certifies a mono witness at scope."""
    v = check_preserving(f, R, S, s, n, domain=domain, strict=strict)
    if not v.ok:
        return v
    return injective_at(Morphism(R, S, f), s, n, domain=domain, strict=strict)


def morphism_eq(a: Morphism, b: Morphism, s: int, n: int, *, domain: int | None = None, strict: bool = False) -> bool:
    """Equality of induced class maps: ``fa(x) S_s fb(x)`` for every x in the domain.

    Both morphisms are assumed preserving at scope.  Raises :class:`ScopeError`
    in strict mode when an image leaves ``[0, n)``.
    """
    if a.source != b.source or a.target != b.target:
        raise MorphismError("morphisms with different source or target")
    d = n if domain is None else domain
    fa, fb = compile_fun(a.fun), compile_fun(b.fun)
    key = cr.stage_key(a.target, s)
    for x in range(d):
        u, v = fa(x), fb(x)
        if strict and max(u, v) >= n:
            raise ScopeError(f"image of {x} leaves [0, {n}); need n={max(u, v) + 1}")
        if u != v and key(u) != key(v):
            return False
    return True


def compose(g: Morphism, f: Morphism, s: int, n: int) -> Morphism:
    """``g . f``; both factors are checked preserving at ``(s, n)`` first."""
    if f.target != g.source:
        raise MorphismError("compose: target of f differs from source of g")
    f.verified(s, n)
    g.verified(s, n)
    return Morphism(f.source, g.target, Compose(g.fun, f.fun), verified_scope=(s, n))


# -- limits and colimits ------------------------------------------------------


def product(R: RelationSpec, S: RelationSpec) -> tuple[Product, Morphism, Morphism]:
    P = Product(R, S)
    return P, Morphism(P, R, Proj0()), Morphism(P, S, Proj1())


def pair_mediator(rho_r: Morphism, rho_s: Morphism) -> Morphism:
    if rho_r.source != rho_s.source:
        raise MorphismError("pair_mediator: the morphisms must share a source")
    return Morphism(rho_r.source, Product(rho_r.target, rho_s.target), Pair(rho_r.fun, rho_s.fun))


def coproduct(R: RelationSpec, S: RelationSpec) -> tuple[Coproduct, Morphism, Morphism]:
    C = Coproduct(R, S)
    return C, Morphism(R, C, Double()), Morphism(S, C, DoublePlus1())


def copair_fun(f_r: FunExpr, f_s: FunExpr) -> FunExpr:
    """``2y -> f_r(y)``, ``2y+1 -> f_s(y)``."""
    return IfLess(Mod(2), Const(1), Compose(f_r, Half()), Compose(f_s, Half()))


def copair_mediator(rho_r: Morphism, rho_s: Morphism) -> Morphism:
    if rho_r.target != rho_s.target:
        raise MorphismError("copair_mediator: the morphisms must share a target")
    return Morphism(Coproduct(rho_r.source, rho_s.source), rho_r.target, copair_fun(rho_r.fun, rho_s.fun))


def coequalizer(a: Morphism, b: Morphism) -> tuple[Coequalizer, Morphism]:
    """``Z`` generated by ``Y`` and the pairs ``(f1(x), f2(x))``; ``gamma`` is induced by id."""
    if a.source != b.source or a.target != b.target:
        raise MorphismError("coequalizer: the morphisms must be parallel")
    Z = Coequalizer(a.target, a.fun, b.fun)
    return Z, Morphism(a.target, Z, Id())


def coequalizer_factor(gamma_prime: Morphism, Z: Coequalizer) -> Morphism:
    """The factor of ``gamma_prime: Y -> U`` through ``Z``: same function, source ``Z``."""
    if gamma_prime.source != Z.base:
        raise MorphismError("the morphism to factor must start at the coequalizer's base")
    return Morphism(Z, gamma_prime.target, gamma_prime.fun)


def terminal_morphism(R: RelationSpec) -> Morphism:
    return Morphism(R, IdN(1), Const(0))


def initial_refutation(X: RelationSpec) -> tuple[Morphism, Morphism]:
    """Two morphisms ``X -> Id_2`` with different induced maps."""
    return Morphism(X, IdN(2), Const(0)), Morphism(X, IdN(2), Const(1))


@dataclass(frozen=True)
class EqualizerWitness:
    first: Morphism
    second: Morphism
    n: int
    agreeing: tuple[int, ...]

    @property
    def ok(self) -> bool:
        """No input below ``n`` is sent to related points, so nothing can equalize the pair."""
        return not self.agreeing


def equalizer_refutation(n: int = 10_000, s: int = 0) -> EqualizerWitness:
    first, second = Morphism(IdAll(), IdN(2), Const(0)), Morphism(IdAll(), IdN(2), Const(1))
    f0, f1 = compile_fun(first.fun), compile_fun(second.fun)
    agreeing = tuple(x for x in range(n) if cr.related(IdN(2), s, f0(x), f1(x)))
    return EqualizerWitness(first, second, n, agreeing)


def mono_separation_pair(
    gamma: Morphism, s: int, n: int, source: RelationSpec | None = None
) -> tuple[Morphism, Morphism] | None:
    """Two distinct morphisms ``E -> gamma.source`` identified by ``gamma``, or None if injective.

    ``E`` defaults to equality; any relation works since constants preserve everything.
    """
    v = injective_at(gamma, s, n)
    if v.status != "cex":
        return None
    a1, a2 = v.witness
    E = IdAll() if source is None else source
    return Morphism(E, gamma.source, Const(a1)), Morphism(E, gamma.source, Const(a2))


def kernel_of_numbering(labels: FunExpr) -> Kernel:
    """The equivalence relation presented by a numbering: ``x ~ y`` iff same label."""
    return Kernel(labels)

