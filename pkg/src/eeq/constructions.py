"""Replayable stage constructions and worked examples.

Undecidable ingredients (an undecidable c.e. set, an indexing of co-c.e.
sets) are replaced by finite scheduled surrogates with explicit horizons.
Every diagnostic produced here is evidence at surrogate scale, never a proof
of the infinite statement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from . import category_ops as co
from . import core_rel as cr
from .core_rel import (
    ZERO_REST_SEED,
    Coceer,
    Coequalizer,
    Coproduct,
    EnumU,
    IdAll,
    IdN,
    Isolate,
    RelationSpec,
    StageTrace,
)
from .errors import SurrogateError
from .funlang import Compose, Const, Double, DoublePlus1, FunExpr, Id, Mod, Proj0, Proj1, Table, compile_fun


@dataclass
class Diagnostics:
    """Ordered named checks; each is ``pass``, ``fail`` or ``skipped``."""

    name: str
    checks: list[tuple[str, str, str]] = field(default_factory=list)
    facts: list[tuple[str, str]] = field(default_factory=list)

    def check(self, label: str, passed: bool, detail: str = "") -> bool:
        self.checks.append((label, "pass" if passed else "fail", detail))
        return passed

    def skip(self, label: str, detail: str = "") -> None:
        self.checks.append((label, "skipped", detail))

    def fact(self, key: str, value: object) -> None:
        self.facts.append((key, str(value)))

    @property
    def ok(self) -> bool:
        return all(status != "fail" for _, status, _ in self.checks)

    def lines(self) -> list[str]:
        out = [f"construction={self.name}"]
        out += [f"{k}={v}" for k, v in self.facts]
        for label, status, detail in self.checks:
            out.append(f"check {label}={status}" + (f" {detail}" if detail else ""))
        out.append(f"result={'pass' if self.ok else 'fail'}")
        return out


# -- surrogates ---------------------------------------------------------------


@dataclass(frozen=True)
class CoCeFamily:
    """Finite surrogate for an indexing ``V_0, ..., V_{E-1}`` of co-c.e. sets.

    Every ``V_{e,0}`` is all of N; ``extractions[(e, x)] = t`` removes ``x``
    from ``V_e`` at stage ``t >= 1``.  Numbers never extracted stay forever.
    """

    E: int
    horizon: int
    extractions: tuple[tuple[int, int, int], ...] = ()
    kept: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        seen: dict[tuple[int, int], int] = {}
        for e, x, t in self.extractions:
            if not 0 <= e < self.E:
                raise SurrogateError(f"index {e} outside 0..{self.E - 1}", "index-range")
            if t < 1:
                raise SurrogateError(f"extract {e} {x} @{t}: V_e,0 is all of N, so extraction starts at stage 1", "anti-monotone")
            if t > self.horizon:
                raise SurrogateError(f"extract {e} {x} @{t} lies past the horizon {self.horizon}", "horizon")
            if (e, x) in seen:
                raise SurrogateError(f"{x} is extracted from V_{e} twice (stages {seen[(e, x)]} and {t}); it would have to re-enter", "anti-monotone")
            seen[(e, x)] = t
        for e, x in self.kept:
            if (e, x) in seen:
                raise SurrogateError(f"{x} is both kept in and extracted from V_{e}", "anti-monotone")
            if not 0 <= e < self.E:
                raise SurrogateError(f"index {e} outside 0..{self.E - 1}", "index-range")

    def _stage_of(self, e: int, x: int) -> int | None:
        for e2, x2, t in self.extractions:
            if (e2, x2) == (e, x):
                return t
        return None

    def member(self, e: int, x: int, s: int) -> bool:
        """Is ``x`` in ``V_{e,s}``?"""
        t = self._stage_of(e, x)
        return t is None or s < t

    def final_member(self, e: int, x: int) -> bool:
        return self.member(e, x, self.horizon)


@dataclass(frozen=True)
class KbarSurrogate:
    """A finite enumeration of ``K``: ``x`` enters at its stage; the complement is the surrogate for K-bar."""

    enumeration: tuple[tuple[int, int], ...]
    horizon: int

    def __post_init__(self):
        xs = [x for x, _ in self.enumeration]
        if len(set(xs)) != len(xs):
            raise SurrogateError("a number is enumerated into K twice", "enumeration")
        stages = [t for _, t in self.enumeration]
        if stages != sorted(stages):
            raise SurrogateError("enumeration stages must be non-decreasing", "enumeration")
        if any(t > self.horizon for t in stages):
            raise SurrogateError("enumeration runs past the horizon", "horizon")

    def k_at(self, s: int) -> set[int]:
        return {x for x, t in self.enumeration if t <= s}


def bundled_family() -> CoCeFamily:
    from .formats import parse_family

    return parse_family(resources.files("eeq.data").joinpath("family_e8.txt").read_text())


def bundled_kbar() -> KbarSurrogate:
    from .formats import parse_kbar

    return parse_kbar(resources.files("eeq.data").joinpath("kbar.txt").read_text())


# -- the co-c.e. pair whose coequalizer has only two classes ------------------


@dataclass(frozen=True)
class CounterPi1Result:
    Y: Coceer
    U: tuple[int, ...]
    f1: FunExpr
    f2: FunExpr
    Z: Coequalizer
    trace: StageTrace
    diagnostics: Diagnostics
    final_stage: int


def enumeration_table(entries: Sequence[tuple[int, int]]) -> tuple[FunExpr, int]:
    """Stage-faithful enumeration of ``U`` from ``(u, stage)`` entries in stage order.

    Input ``x`` is first read at stage ``x + 1``, so slot ``x`` may only carry a
    ``u`` that entered by then.  Slots before the first entry hold ``0`` (a
    reflexive pair against ``f1 = const 0``); later idle slots repeat the last
    value.  Returns the table and the number of slots needed to emit all of ``U``.
    """
    if not entries:
        return Const(0), 0
    table: dict[int, int] = {}
    x, last = 0, 0
    for u, t in entries:
        while x + 1 < t:
            table[x] = last
            x += 1
        table[x] = last = u
        x += 1
    return Table(table, Const(last)), x


def counter_pi1_machine(fam: CoCeFamily, stages: int, n: int) -> CounterPi1Result:
    """Build ``Y``, ``U`` and ``Z`` by stages: ``e+2`` is isolated and enumerated into
    ``U`` at the stage where it leaves ``V_e``; ``Z`` glues ``U`` onto ``[0]``.
    """
    if stages < fam.horizon:
        raise SurrogateError(f"stages={stages} is below the family horizon {fam.horizon}", "horizon")
    if n < fam.E + 2:
        raise SurrogateError(f"bound n={n} too small; need n >= {fam.E + 2}", "bound", min_n=fam.E + 2)

    events: list = []
    for t in range(1, stages + 1):
        for e in range(fam.E):
            if fam.member(e, e + 2, t - 1) and not fam.member(e, e + 2, t):
                events.append(Isolate(e + 2, t))
                events.append(EnumU(e + 2, t))
    trace = StageTrace(tuple(events))
    U = tuple(trace.enumerated(stages))
    Y = cr.coceer(ZERO_REST_SEED, trace)
    f1 = Const(0)
    f2, slots = enumeration_table([(ev.x, ev.stage) for ev in trace.events if isinstance(ev, EnumU)])
    Z = Coequalizer(Y, f1, f2)

    diag = Diagnostics("counter-pi1")
    diag.fact("E", fam.E)
    diag.fact("stages", stages)
    diag.fact("n", n)
    diag.fact("U", ",".join(map(str, U)) or "-")
    if U:
        first_slot = {}
        for x in range(slots):
            first_slot.setdefault(compile_fun(f2)(x), x)
        diag.fact("f2_slots", " ".join(f"{u}@{first_slot[u]}" for u in U))
    else:
        diag.fact("f2", "const 0 (U empty)")
    # Z reads inputs x < s, so gluing all of U takes `slots` stages; past the
    # family horizon Y no longer changes, so running on alters nothing else
    final = max(stages, slots)
    diag.fact("final_stage", final)
    diag.fact("scale", "surrogate")
    count = cr.classes_count(Z, final, n)
    diag.check("classes", count == 2, f"classes={count}")
    agree = 0
    for e in range(fam.E):
        glued = cr.related_at(Z, final, n, 0, e + 2)
        if glued != (not fam.final_member(e, e + 2)):
            diag.check(f"diagonal_{e}", False, f"0 Z {e + 2} is {glued} but {e + 2} in V_{e} is {fam.final_member(e, e + 2)}")
        else:
            agree += 1
    diag.check("diagonal", agree == fam.E, f"diagonal ok {agree}/{fam.E}")
    return CounterPi1Result(Y, U, f1, f2, Z, trace, diag, final)


# -- an epimorphism that is not onto -----------------------------------------


@dataclass(frozen=True)
class EpiResult:
    R: Coceer
    f: FunExpr
    alpha: co.Morphism
    C: tuple[int, ...]
    A: tuple[int, ...]
    B: tuple[int, ...]
    s: int
    n: int
    trace: StageTrace
    diagnostics: Diagnostics

    @property
    def domain(self) -> int:
        return len(self.C)


def epi_not_onto_example(k: KbarSurrogate, s: int, n: int) -> EpiResult:
    """Coceer with classes ``A = 2K̄``, ``B = 2K̄+1`` and singletons ``C``, plus ``Id -> R`` onto ``C``.

    At stage ``s`` the surrogate ``K̄`` is the set of numbers not yet enumerated.
    The map is the increasing enumeration of ``C`` below ``n``, extended by the
    identity; checks quantify over the inputs ``[0, |C ∩ [0, n)|)``.
    """
    if s > k.horizon:
        raise SurrogateError(f"stage {s} lies past the surrogate horizon {k.horizon}", "horizon")
    events: list = []
    for x, t in k.enumeration:
        events += [Isolate(2 * x, t), Isolate(2 * x + 1, t)]
    trace = StageTrace(tuple(events))
    R = cr.coceer(Mod(2), trace)
    K = k.k_at(s)
    C = tuple(sorted(y for y in range(n) if y // 2 in K))
    if not C:
        raise SurrogateError("C is empty below n: the K surrogate enumerates nothing small enough", "nonempty-C", min_n=None)
    A = tuple(y for y in range(0, n, 2) if y // 2 not in K)
    B = tuple(y for y in range(1, n, 2) if y // 2 not in K)
    f = Table({i: c for i, c in enumerate(C)}, Id())
    alpha = co.Morphism(IdAll(), R, f)

    diag = Diagnostics("epi-not-onto")
    diag.fact("s", s)
    diag.fact("n", n)
    diag.fact("K", ",".join(map(str, sorted(K))))
    diag.fact("C", ",".join(map(str, C)))
    diag.fact("scale", "surrogate")
    m = len(C)
    red = co.reduction_check(f, IdAll(), R, s, n, domain=m)
    diag.check("reduction", red.ok, str(red))
    sur = co.surjective_at(alpha, s, n, domain=m)
    missed = sorted(sur.missed)
    approx = cr.approximant(R, s, n)
    missed_classes = sorted(tuple(c) for c in approx.classes() if c[0] in missed)
    expected = sorted(c for c in (A, B) if c)
    diag.check("not-onto", sur.status == "cex", str(sur))
    diag.check("omitted=A,B", missed_classes == expected, f"omitted={len(missed_classes)}")
    diag.fact("A", ",".join(map(str, A)))
    diag.fact("B", ",".join(map(str, B)))
    return EpiResult(R, f, alpha, C, A, B, s, n, trace, diag)


def case_identities(result: EpiResult, f1: FunExpr, f2: FunExpr, S: RelationSpec) -> Diagnostics:
    """Check the case analysis for two maps ``R -> S`` that agree after ``alpha``.

    Depending on whether they differ on ``A``, on ``B`` or on both, exactly the
    numbers outside ``A``, outside ``B`` or in ``C`` are those with
    ``f1(x) S f2(x)``.
    """
    s, n = result.s, result.n
    R = result.R
    diag = Diagnostics("epi-case-identities")
    g1, g2 = co.Morphism(R, S, f1), co.Morphism(R, S, f2)
    for g in (g1, g2):
        v = co.check_preserving(g.fun, R, S, s, n)
        if not diag.check(f"preserving {g.fun}", v.ok, str(v)):
            return diag
    agree = co.morphism_eq(co.compose(g1, result.alpha, s, n), co.compose(g2, result.alpha, s, n), s, n, domain=result.domain)
    if not diag.check("agree-on-range", agree):
        return diag
    a, b = compile_fun(f1), compile_fun(f2)

    def same(x: int) -> bool:
        return cr.related(S, s, a(x), b(x))

    diff_a = bool(result.A) and not same(result.A[0])
    diff_b = bool(result.B) and not same(result.B[0])
    A, B = set(result.A), set(result.B)
    if diff_a and not diff_b:
        case, member = 1, (lambda x: x not in A)
    elif diff_b and not diff_a:
        case, member = 2, (lambda x: x not in B)
    elif diff_a and diff_b:
        case, member = 3, (lambda x: x not in A and x not in B)
    else:
        diag.fact("case", 0)
        diag.check("equal-morphisms", co.morphism_eq(g1, g2, s, n))
        return diag
    diag.fact("case", case)
    bad = [x for x in range(n) if member(x) != same(x)]
    diag.check("identity", not bad, f"violations={len(bad)}")
    return diag


# -- every ceer is a coequalizer ----------------------------------------------


@dataclass(frozen=True)
class CeerCoeqResult:
    Z: Coequalizer
    gamma: co.Morphism
    roundtrip: bool


def ceer_as_coequalizer(h: FunExpr, s: int, n: int) -> CeerCoeqResult:
    """Coequalize ``x -> (h(x))_0`` and ``x -> (h(x))_1`` on ``Id -> Id`` and compare with the ceer enumerated by ``h``."""
    f1, f2 = Compose(Proj0(), h), Compose(Proj1(), h)
    Z, gamma = co.coequalizer(co.Morphism(IdAll(), IdAll(), f1), co.Morphism(IdAll(), IdAll(), f2))
    direct = cr.approximant(cr.FromPairs(cr.FunRange(h)), s, n)
    return CeerCoeqResult(Z, gamma, cr.approximant(Z, s, n).same_partition(direct))


# -- finite coequalizers of non-finite objects --------------------------------


def remark_demo(X: RelationSpec, s: int, n: int) -> Diagnostics:
    """Coequalize ``x -> 2x`` and the constant 1 from ``X`` into ``X ⊕ Id_1``: one class remains.

    The constant-1 map plays the role of the "odd" morphism here; it is not
    the ``y -> 2y+1`` injection of the coproduct.
    """
    P, _, _ = co.coproduct(X, IdN(1))
    ev, odd = co.Morphism(X, P, Double()), co.Morphism(X, P, Const(1))
    diag = Diagnostics("remark")
    diag.fact("s", s)
    diag.fact("n", n)
    diag.fact("odd", "const 1")
    for name, m in (("ev", ev), ("odd", odd)):
        v = co.check_preserving(m.fun, m.source, m.target, s, n)
        diag.check(f"preserving_{name}", v.ok, str(v))
    Z, _ = co.coequalizer(ev, odd)
    count = cr.classes_count(Z, s, n)
    diag.check("classes", count == 1, f"classes={count}")
    return diag


def darkstar_closure_demo(
    X: RelationSpec,
    Y: RelationSpec,
    lightwitness: FunExpr | None,
    s: int,
    n: int,
    coequalized: Sequence[tuple[FunExpr, FunExpr]] = ((Double(), DoublePlus1()),),
) -> Diagnostics:
    """Scope-level evidence for closure under coproducts and coequalizers.

    (a) a reduction of Id into ``Y`` yields one into ``Y ⊕ X`` by doubling;
    (b) every coequalizer built over ``Y`` contains ``Y`` on ``[0, n)``.
    Darkness itself has no finite certificate and is not checked.
    """
    diag = Diagnostics("darkstar")
    diag.fact("darkness", "not-decidable")
    if lightwitness is None:
        diag.skip("light-join", "no light witness supplied")
    else:
        base = co.reduction_check(lightwitness, IdAll(), Y, s, n)
        if diag.check("light-Y", base.ok, str(base)):
            lifted = co.reduction_check(Compose(Double(), lightwitness), IdAll(), Coproduct(Y, X), s, n)
            diag.check("light-join", lifted.ok, str(lifted))
    approx_y = cr.approximant(Y, s, n)
    held = sum(approx_y.refines(cr.approximant(Coequalizer(Y, f1, f2), s, n)) for f1, f2 in coequalized)
    diag.check("containment", held == len(coequalized), f"held={held}/{len(coequalized)}")
    return diag
