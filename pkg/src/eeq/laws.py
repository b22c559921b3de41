"""Seeded law suites for the universal properties, checked at finite scope.

Uniqueness clauses cannot be checked against *all* morphisms.  Each suite
instead draws a candidate family: random terms up to a size cap plus targeted
mutants of the mediator (class-preserving rewrites and single-class patches).
Every candidate that is a morphism at scope and satisfies the commuting
equations must induce the same class map as the mediator.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import category_ops as co
from . import core_rel as cr
from .core_rel import ExplicitList, FromPairs, IdAll, IdN, RelationSpec
from .errors import OverflowFault
from .funlang import (
    Add,
    Compose,
    Const,
    Double,
    DoublePlus1,
    FunExpr,
    Half,
    Id,
    IfLess,
    Mod,
    Mul,
    Pair,
    Proj0,
    Proj1,
    Succ,
    Table,
    compile_fun,
)
from .oracles import matrix_closure, matrix_reps

DEFAULT_CAP = 7
MIN_CANDIDATES = 50
SPAN = 12  # random FromPairs only touch numbers below this


# -- random generation --------------------------------------------------------


def random_frompairs(rng: random.Random, s: int, span: int = SPAN) -> FromPairs:
    count = rng.randint(1, span)
    stamps = sorted(rng.randint(0, s) for _ in range(count))
    items = [(rng.randrange(span), rng.randrange(span), t) for t in stamps]
    return FromPairs(ExplicitList(tuple(items)))


def random_relation(rng: random.Random, s: int) -> RelationSpec:
    pick = rng.randrange(4)
    if pick == 0:
        return IdAll()
    if pick == 1:
        return IdN(2)
    if pick == 2:
        return IdN(3)
    return random_frompairs(rng, s)


def canonicalizer(rel: RelationSpec, s: int, bound: int) -> FunExpr:
    """A term sending each number to the least member of its stage-``s`` class.

    Exact for equality and congruences; for other relations it is exact below
    ``bound`` and the identity above, which is right whenever every non-trivial
    class lies below ``bound``.
    """
    if isinstance(rel, IdAll):
        return Id()
    if isinstance(rel, IdN):
        return Mod(rel.n)
    reps = cr.approximant(rel, s, bound).reps
    return Table({x: r for x, r in enumerate(reps) if x != r}, Id())


_LEAVES: tuple[Callable[[random.Random], FunExpr], ...] = (
    lambda r: Id(),
    lambda r: Succ(),
    lambda r: Double(),
    lambda r: DoublePlus1(),
    lambda r: Half(),
    lambda r: Proj0(),
    lambda r: Proj1(),
    lambda r: Const(r.randrange(6)),
    lambda r: Mod(r.randint(1, 6)),
)


def random_term(rng: random.Random, max_size: int) -> FunExpr:
    """A uniformly shaped random term with at most ``max_size`` nodes."""
    if max_size < 3 or rng.random() < 0.3:
        return rng.choice(_LEAVES)(rng)
    if max_size >= 5 and rng.random() < 0.15:
        budget = max_size - 1
        parts = [random_term(rng, max(1, budget // 4)) for _ in range(4)]
        return IfLess(*parts)
    if rng.random() < 0.1:
        return Table({rng.randrange(8): rng.randrange(8)}, random_term(rng, max_size - 1))
    left_budget = rng.randint(1, max_size - 2)
    left = random_term(rng, left_budget)
    right = random_term(rng, max_size - 1 - left_budget)
    return rng.choice((Pair, Compose, Add, Mul, Compose))(left, right)


def random_preserving(rng: random.Random, source: RelationSpec, s: int, bound: int, modulus: int) -> FunExpr:
    """A random function that preserves ``source`` at stage ``s`` with values below ``modulus``."""
    body = random_term(rng, 4)
    return Compose(Mod(modulus), Compose(body, canonicalizer(source, s, bound)))


def _safe_morphism(m: co.Morphism, s: int, n: int) -> bool:
    try:
        return co.check_preserving(m.fun, m.source, m.target, s, n).ok
    except OverflowFault:
        return False


def _safe_eq(a: co.Morphism, b: co.Morphism, s: int, n: int) -> bool | None:
    try:
        return co.morphism_eq(a, b, s, n)
    except OverflowFault:
        return None


def _class_below(rel: RelationSpec, s: int, x: int, n: int) -> list[int]:
    key = cr.stage_key(rel, s)
    k = key(x)
    return [y for y in range(n) if key(y) == k]


def _mate(rel: RelationSpec, s: int, u: int, rng: random.Random, same: bool, search: int) -> int | None:
    """A number related (``same``) or unrelated to ``u``, searched below ``search``."""
    key = cr.stage_key(rel, s)
    k = key(u)
    pool = [y for y in range(search) if (key(y) == k) == same and y != u]
    return rng.choice(pool) if pool else None


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class LawReport:
    law: str
    seed: int
    ok: bool
    candidates: int = 0
    commuting: int = 0
    detail: str = ""

    def line(self) -> str:
        status = "ok" if self.ok else "fail"
        out = f"law={self.law} seed={self.seed} status={status} candidates={self.candidates} commuting={self.commuting}"
        return f"{out} detail={self.detail}" if self.detail else out


# -- products -----------------------------------------------------------------


def _product_candidates(rng, T, R, S, f_r, f_s, s, n, cap, count) -> list[FunExpr]:
    med = Pair(f_r, f_s)
    cands: list[FunExpr] = [
        Compose(Pair(Proj0(), Proj1()), med),
        Pair(Compose(Proj0(), med), Compose(Proj1(), med)),
        Pair(Compose(canonicalizer(R, s, n), f_r), Compose(canonicalizer(S, s, n), f_s)),
        Pair(f_s, f_r),
        Pair(f_r, Succ()),
    ]
    f_r_c, f_s_c = compile_fun(f_r), compile_fun(f_s)
    search = max(SPAN, 16)
    for _ in range(8):
        x0 = rng.randrange(n)
        cls = _class_below(T, s, x0, n)
        u, v = f_r_c(x0), f_s_c(x0)
        for same_r, same_s in ((True, True), (False, True), (True, False)):
            u2 = _mate(R, s, u, rng, same_r, search)
            v2 = _mate(S, s, v, rng, same_s, search)
            if u2 is None or v2 is None:
                continue
            code = compile_fun(Pair(Const(u2), Const(v2)))(0)
            cands.append(Table({x: code for x in cls}, med))
    while len(cands) < count:
        cands.append(random_term(rng, cap))
    return cands


def product_instance(seed: int, s: int = 32, n: int = 256, cap: int = DEFAULT_CAP, count: int = MIN_CANDIDATES) -> LawReport:
    rng = random.Random(seed)
    T, R, S = (random_relation(rng, s) for _ in range(3))
    f_r = random_preserving(rng, T, s, n, rng.randint(1, 11))
    f_s = random_preserving(rng, T, s, n, rng.randint(1, 11))
    rho_r = co.Morphism(T, R, f_r).verified(s, n)
    rho_s = co.Morphism(T, S, f_s).verified(s, n)
    P, pi_r, pi_s = co.product(R, S)
    med = co.pair_mediator(rho_r, rho_s)
    if not co.check_preserving(med.fun, T, P, s, n).ok:
        return LawReport("product", seed, False, detail="mediator not preserving")
    if not co.morphism_eq(co.compose(pi_r, med, s, n), rho_r, s, n):
        return LawReport("product", seed, False, detail="pi_R . mediator != rho_R")
    if not co.morphism_eq(co.compose(pi_s, med, s, n), rho_s, s, n):
        return LawReport("product", seed, False, detail="pi_S . mediator != rho_S")
    cands = _product_candidates(rng, T, R, S, f_r, f_s, s, n, cap, count)
    commuting = 0
    for fun in cands:
        beta = co.Morphism(T, P, fun)
        left = _safe_eq(co.Morphism(T, R, Compose(Proj0(), fun)), rho_r, s, n)
        right = left and _safe_eq(co.Morphism(T, S, Compose(Proj1(), fun)), rho_s, s, n)
        if not (left and right) or not _safe_morphism(beta, s, n):
            continue
        commuting += 1
        if not co.morphism_eq(beta, med, s, n):
            return LawReport("product", seed, False, len(cands), commuting, f"non-unique mediator {fun}")
    return LawReport("product", seed, len(cands) >= count, len(cands), commuting)


# -- coproducts ---------------------------------------------------------------


def _coproduct_candidates(rng, C, R, S, T, f_r, f_s, s, n, cap, count) -> list[FunExpr]:
    cop = co.copair_fun(f_r, f_s)
    cands: list[FunExpr] = [
        IfLess(Const(0), Mod(2), Compose(f_s, Half()), Compose(f_r, Half())),
        Compose(Id(), cop),
        co.copair_fun(f_s, f_r),
        co.copair_fun(f_r, Const(0)),
        Compose(f_r, Half()),
    ]
    f_r_c, f_s_c = compile_fun(f_r), compile_fun(f_s)
    search = max(SPAN, 16)
    for _ in range(8):
        x0 = rng.randrange(n)
        cls = _class_below(C, s, x0, n)
        side_fun = f_s_c if x0 & 1 else f_r_c
        t = side_fun(x0 >> 1)
        for same in (True, False):
            t2 = _mate(T, s, t, rng, same, search)
            if t2 is not None:
                cands.append(Table({x: t2 for x in cls}, cop))
    while len(cands) < count:
        cands.append(random_term(rng, cap))
    return cands


def coproduct_instance(seed: int, s: int = 32, n: int = 256, cap: int = DEFAULT_CAP, count: int = MIN_CANDIDATES) -> LawReport:
    rng = random.Random(seed)
    R, S, T = (random_relation(rng, s) for _ in range(3))
    f_r = random_preserving(rng, R, s, n, rng.randint(1, 11))
    f_s = random_preserving(rng, S, s, n, rng.randint(1, 11))
    rho_r = co.Morphism(R, T, f_r).verified(s, n)
    rho_s = co.Morphism(S, T, f_s).verified(s, n)
    C, i_r, i_s = co.coproduct(R, S)
    cop = co.copair_mediator(rho_r, rho_s)
    if not co.check_preserving(cop.fun, C, T, s, n).ok:
        return LawReport("coproduct", seed, False, detail="copair not preserving")
    if not co.morphism_eq(co.compose(cop, i_r, s, n), rho_r, s, n):
        return LawReport("coproduct", seed, False, detail="copair . i_R != rho_R")
    if not co.morphism_eq(co.compose(cop, i_s, s, n), rho_s, s, n):
        return LawReport("coproduct", seed, False, detail="copair . i_S != rho_S")
    cands = _coproduct_candidates(rng, C, R, S, T, f_r, f_s, s, n, cap, count)
    commuting = 0
    for fun in cands:
        beta = co.Morphism(C, T, fun)
        left = _safe_eq(co.Morphism(R, T, Compose(fun, Double())), rho_r, s, n)
        right = left and _safe_eq(co.Morphism(S, T, Compose(fun, DoublePlus1())), rho_s, s, n)
        if not (left and right) or not _safe_morphism(beta, s, n):
            continue
        commuting += 1
        if not co.morphism_eq(beta, cop, s, n):
            return LawReport("coproduct", seed, False, len(cands), commuting, f"non-unique copair {fun}")
    return LawReport("coproduct", seed, len(cands) >= count, len(cands), commuting)


# -- coequalizers -------------------------------------------------------------


def coequalizer_oracle(Y: RelationSpec, f1: FunExpr, f2: FunExpr, s: int, n: int) -> tuple[int, ...]:
    """Least-element partition of ``[0, n)`` for the closure of ``Y_s`` and the f-pairs, by matrix fixpoint.

    The closure is taken over a universe large enough to hold every generated
    endpoint and then restricted to ``[0, n)``.
    """
    a, b = compile_fun(f1), compile_fun(f2)
    fpairs = [(a(x), b(x)) for x in range(s)]
    universe = max([n] + [max(p) + 1 for p in fpairs])
    key = cr.stage_key(Y, s)
    ypairs = [(x, y) for x in range(universe) for y in range(x + 1, universe) if key(x) == key(y)]
    return matrix_reps(matrix_closure(ypairs + fpairs, universe))[:n]


def coequalizer_instance(seed: int, s: int = 32, n: int = 128, cap: int = DEFAULT_CAP, count: int = 10) -> LawReport:
    rng = random.Random(seed)
    X, Y = random_relation(rng, s), random_relation(rng, s)
    f1 = random_preserving(rng, X, s, n, rng.randint(1, n))
    f2 = random_preserving(rng, X, s, n, rng.randint(1, n))
    a = co.Morphism(X, Y, f1).verified(s, n)
    b = co.Morphism(X, Y, f2).verified(s, n)
    Z, gamma = co.coequalizer(a, b)
    budget = min(s, n)
    if not co.check_preserving(gamma.fun, Y, Z, s, n).ok:
        return LawReport("coeq", seed, False, detail="gamma not preserving")
    if not co.morphism_eq(co.compose(gamma, a, s, n), co.compose(gamma, b, s, n), s, n, domain=budget):
        return LawReport("coeq", seed, False, detail="gamma . alpha != gamma . beta")
    approx_z = cr.approximant(Z, s, n)
    if approx_z.reps != coequalizer_oracle(Y, f1, f2, s, n):
        return LawReport("coeq", seed, False, detail="Z differs from the closure oracle")
    if not cr.approximant(Y, s, n).refines(approx_z):
        return LawReport("coeq", seed, False, detail="Y_s not contained in Z_s")
    if not co.surjective_at(gamma, s, n).ok:
        return LawReport("coeq", seed, False, detail="gamma not onto at scope")

    # factorization through Z of morphisms that coequalize alpha and beta
    canon_z = canonicalizer(Z, s, n)
    targets = [(Z, Id())] + [
        (random_relation(rng, s), Compose(Mod(rng.randint(1, 11)), Compose(random_term(rng, 4), canon_z)))
        for _ in range(count)
    ]
    tried = commuting = 0
    for U, g in targets:
        gp = co.Morphism(Y, U, g)
        if not _safe_morphism(gp, s, n):
            continue
        if not co.morphism_eq(co.Morphism(X, U, Compose(g, f1)), co.Morphism(X, U, Compose(g, f2)), s, n, domain=budget):
            continue
        tried += 1
        factor = co.coequalizer_factor(gp, Z)
        if not co.check_preserving(factor.fun, Z, U, s, n).ok:
            return LawReport("coeq", seed, False, tried, commuting, f"factor {g} not preserving on Z")
        if not co.morphism_eq(co.Morphism(Y, U, Compose(factor.fun, gamma.fun)), gp, s, n):
            return LawReport("coeq", seed, False, tried, commuting, "factor . gamma != gamma'")
        for delta in [random_term(rng, cap) for _ in range(5)] + [Compose(g, canon_z), Table({0: g(0)}, g)]:
            dm = co.Morphism(Z, U, delta)
            if not _safe_morphism(dm, s, n):
                continue
            if _safe_eq(co.Morphism(Y, U, Compose(delta, gamma.fun)), gp, s, n):
                commuting += 1
                if not co.morphism_eq(dm, factor, s, n):
                    return LawReport("coeq", seed, False, tried, commuting, f"non-unique factor {delta}")
    return LawReport("coeq", seed, tried >= 1, tried, commuting)


# -- mono, terminal, initial --------------------------------------------------


def mono_instance(seed: int, s: int = 16, n: int = 64) -> LawReport:
    """A random non-injective morphism and the separating pair built from its witness."""
    rng = random.Random(seed)
    for _ in range(200):
        R, S = random_relation(rng, s), random_relation(rng, s)
        gamma = co.Morphism(R, S, random_preserving(rng, R, s, n, rng.randint(1, 6)))
        if co.injective_at(gamma, s, n).status == "cex":
            break
    else:
        return LawReport("mono", seed, False, detail="no non-injective morphism drawn")
    pair = co.mono_separation_pair(gamma, s, n)
    if pair is None:
        return LawReport("mono", seed, False, detail="no separating pair returned")
    a1, a2 = pair
    same = co.morphism_eq(co.compose(gamma, a1, s, n), co.compose(gamma, a2, s, n), s, n)
    distinct = not co.morphism_eq(a1, a2, s, n)
    return LawReport("mono", seed, same and distinct, detail=f"a1={a1.fun} a2={a2.fun}")


def terminal_uniqueness(R: RelationSpec, seed: int, s: int = 16, n: int = 64, family: int = 50, cap: int = DEFAULT_CAP) -> LawReport:
    """Every morphism ``R -> Id_1`` drawn from a seeded family equals the constant-0 map."""
    rng = random.Random(seed)
    term = co.terminal_morphism(R)
    funs = [Id(), Succ(), Double()] + [random_term(rng, cap) for _ in range(family - 3)]
    count = 0
    for fun in funs:
        m = co.Morphism(R, IdN(1), fun)
        if not _safe_morphism(m, s, n):
            continue
        count += 1
        if not co.morphism_eq(m, term, s, n):
            return LawReport("terminal", seed, False, count, detail=f"{fun} differs from the terminal map")
    return LawReport("terminal", seed, count >= family, count)


def terminal_instance(seed: int, s: int = 16, n: int = 64, family: int = 50, cap: int = DEFAULT_CAP) -> LawReport:
    rng = random.Random(seed)
    return terminal_uniqueness(random_relation(rng, s), seed + 1, s, n, family, cap)


def initial_instance(seed: int, s: int = 16, n: int = 64) -> LawReport:
    rng = random.Random(seed)
    X = random_relation(rng, s)
    a, b = (m.verified(s, n) for m in co.initial_refutation(X))
    return LawReport("initial", seed, not co.morphism_eq(a, b, s, n), 2)


SUITES: dict[str, Callable[..., LawReport]] = {
    "product-laws": product_instance,
    "coproduct-laws": coproduct_instance,
    "coeq-laws": coequalizer_instance,
    "mono": mono_instance,
    "terminal": terminal_instance,
    "initial": initial_instance,
}


def _run_one(args: tuple[str, int, dict]) -> LawReport:
    name, seed, kwargs = args
    return SUITES[name](seed, **kwargs)


def run_suite(name: str, seed: int, instances: int, jobs: int = 1, **kwargs) -> list[LawReport]:
    """Run ``instances`` seeded instances; results come back in seed order whatever ``jobs`` is."""
    work = [(name, seed * 10_000 + i, kwargs) for i in range(instances)]
    if jobs <= 1:
        return [_run_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, work))
