"""Command-line front end: ``eeq show | verify | construct | trace-replay``.

Exit codes: 0 ok, 1 counterexample or failed diagnostic, 2 unknown at scope,
64 usage error, 65 invalid surrogate input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import category_ops as co
from . import constructions as cons
from . import core_rel as cr
from . import laws
from .errors import EeqError, ParseError, SurrogateError
from .formats import format_trace, parse_family, parse_kbar, parse_relfile, parse_seed, parse_trace, resolve_relation
from .funlang import FunExpr, parse

EXIT_OK, EXIT_CEX, EXIT_UNKNOWN, EXIT_USAGE, EXIT_SURROGATE = 0, 1, 2, 64, 65

VERIFY_KINDS = (
    "preserving",
    "injective",
    "surjective",
    "reduction",
    "product-laws",
    "coproduct-laws",
    "coeq-laws",
    "terminal",
    "initial",
)
CONSTRUCT_KINDS = ("counter-pi1", "epi-not-onto", "ceer-coeq", "remark", "darkstar")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    s: int
    n: int
    seed: int
    cap: int
    fmt: str
    out: Path | None
    jobs: int
    relfile: Path | None
    strict: bool

    def __post_init__(self):
        if self.s < 1 or self.n < 1:
            raise UsageError("--scope needs s, n >= 1")


def _scope(text: str) -> tuple[int, int]:
    try:
        s, n = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected --scope s,n") from None
    return s, n


def _common(suppress: bool) -> argparse.ArgumentParser:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--scope", type=_scope, default=d((32, 64)), help="stage and bound, as s,n")
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--cap", type=int, default=d(laws.DEFAULT_CAP), help="term-size cap of candidate families")
    p.add_argument("--format", dest="fmt", choices=("human", "structured"), default=d("human"))
    p.add_argument("--out", type=Path, default=d(None), help="directory for trace and diagnostics files")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes for law suites")
    p.add_argument("--relfile", type=Path, default=d(None), help="relation file for named relations")
    p.add_argument("--strict-range", dest="strict", action="store_true", default=d(False))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eeq", description=__doc__.splitlines()[0], parents=[_common(False)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_common(True)]
    p = sub.add_parser("show", parents=common, help="print the classes of a relation on [0, n)")
    p.add_argument("relfile", help="relation file, or '-' for inline names only (id, idnK)")
    p.add_argument("name")
    p = sub.add_parser("verify", parents=common, help="run a checker or a law suite")
    p.add_argument("kind", choices=VERIFY_KINDS)
    p.add_argument("args", nargs="*", metavar="KEY=VALUE")
    p = sub.add_parser("construct", parents=common, help="replay a stage construction")
    p.add_argument("which", choices=CONSTRUCT_KINDS)
    p.add_argument("args", nargs="*", metavar="KEY=VALUE")
    p = sub.add_parser("trace-replay", parents=common, help="replay a stage trace file")
    p.add_argument("trace", type=Path)
    p.add_argument("args", nargs="*", metavar="KEY=VALUE")
    return parser


def _kv(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"expected KEY=VALUE, got {item!r}")
        out[key] = value
    return out


class _Env:
    def __init__(self, cfg: RunConfig):
        self.rels: dict[str, cr.RelationSpec] = {}
        if cfg.relfile is not None:
            self.rels = parse_relfile(cfg.relfile.read_text(), cfg.relfile.parent)

    def rel(self, args: dict[str, str], key: str, default: str | None = None) -> cr.RelationSpec:
        token = args.get(key, default)
        if token is None:
            raise UsageError(f"missing {key}=RELATION")
        try:
            return resolve_relation(token, self.rels)
        except KeyError as err:
            raise UsageError(str(err.args[0])) from None

    @staticmethod
    def fun(args: dict[str, str], key: str, required: bool = True) -> FunExpr | None:
        if key not in args:
            if required:
                raise UsageError(f"missing {key}=FUNEXPR")
            return None
        return parse(args[key])


class _Out:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.lines: list[str] = []

    def emit(self, human: str, structured: Sequence[str] | str | None = None):
        if self.cfg.fmt == "human":
            self.lines.append(human)
        else:
            items = [structured] if isinstance(structured, str) else (structured if structured is not None else [human])
            self.lines.extend(items)

    def write_file(self, name: str, text: str):
        if self.cfg.out is not None:
            self.cfg.out.mkdir(parents=True, exist_ok=True)
            (self.cfg.out / name).write_text(text)

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


def _fmt_classes(approx: cr.Approximant) -> str:
    return " ".join(f"[{c[0]}]={{{','.join(map(str, c))}}}" for c in approx.classes())


def cmd_show(cfg: RunConfig, ns, out: _Out) -> int:
    env = {} if ns.relfile == "-" else parse_relfile(Path(ns.relfile).read_text(), Path(ns.relfile).parent)
    try:
        rel = resolve_relation(ns.name, env)
    except KeyError as err:
        raise UsageError(str(err.args[0])) from None
    approx = cr.approximant(rel, cfg.s, cfg.n)
    lines = [f"relation={ns.name}", f"s={cfg.s}", f"n={cfg.n}", f"classes={approx.classes_count}"]
    lines += [f"class {c[0]}=" + ",".join(map(str, c)) for c in approx.classes()]
    if approx.outside:
        lines.append(f"outside={approx.outside}")
    out.emit(_fmt_classes(approx), lines)
    return EXIT_OK


def _suite_lines(reports: list[laws.LawReport]) -> tuple[list[str], bool]:
    ok = all(r.ok for r in reports)
    passed = sum(r.ok for r in reports)
    return [r.line() for r in reports] + [f"summary passed={passed}/{len(reports)} status={'ok' if ok else 'fail'}"], ok


def cmd_verify(cfg: RunConfig, ns, out: _Out) -> int:
    args = _kv(ns.args)
    env = _Env(cfg)
    s, n = cfg.s, cfg.n
    kind = ns.kind
    if kind in ("preserving", "injective", "surjective", "reduction"):
        f = env.fun(args, "f")
        R, S = env.rel(args, "R"), env.rel(args, "S")
        if kind == "preserving":
            v = co.check_preserving(f, R, S, s, n, strict=cfg.strict)
        elif kind == "reduction":
            v = co.reduction_check(f, R, S, s, n, strict=cfg.strict)
        else:
            m = co.Morphism(R, S, f)
            pre = co.check_preserving(f, R, S, s, n, strict=cfg.strict)
            if not pre.ok:
                v = pre
            else:
                check = co.injective_at if kind == "injective" else co.surjective_at
                v = check(m, s, n, strict=cfg.strict)
        out.emit(str(v), [f"kind={kind}", f"f={f}", f"R={args['R']}", f"S={args['S']}", f"verdict={v}"])
        return v.exit_code
    if kind in ("product-laws", "coproduct-laws", "coeq-laws"):
        instances = int(args.get("instances", 100))
        reports = laws.run_suite(kind, cfg.seed, instances, jobs=cfg.jobs, s=s, n=n, cap=cfg.cap)
        lines, ok = _suite_lines(reports)
        out.emit("\n".join(lines), lines)
        return EXIT_OK if ok else EXIT_CEX
    if kind == "terminal":
        R = env.rel(args, "R")
        report = laws.terminal_uniqueness(R, cfg.seed, s, n, cap=cfg.cap)
        out.emit(report.line(), ["kind=terminal", f"R={args['R']}", report.line()])
        return EXIT_OK if report.ok else EXIT_CEX
    # initial
    X = env.rel(args, "X", args.get("R"))
    a, b = co.initial_refutation(X)
    distinct = not co.morphism_eq(a, b, s, n)
    verdict = f"ok s={s} n={n}" if distinct else "cex x=0 y=0"
    lines = ["kind=initial", f"first={a.fun}", f"second={b.fun}", f"distinct={str(distinct).lower()}", f"verdict={verdict}"]
    out.emit(f"{verdict} (const 0 and const 1 into idn2 are distinct: {distinct})", lines)
    return EXIT_OK if distinct else EXIT_CEX


def cmd_construct(cfg: RunConfig, ns, out: _Out) -> int:
    args = _kv(ns.args)
    env = _Env(cfg)
    s, n = cfg.s, cfg.n
    trace = None
    which = ns.which
    if which == "counter-pi1":
        fam = parse_family(Path(args["family"]).read_text()) if "family" in args else cons.bundled_family()
        stages = int(args.get("stages", max(s, fam.horizon)))
        res = cons.counter_pi1_machine(fam, stages, n)
        diag, trace = res.diagnostics, res.trace
    elif which == "epi-not-onto":
        k = parse_kbar(Path(args["kbar"]).read_text()) if "kbar" in args else cons.bundled_kbar()
        # the surrogate is constant past its horizon
        res = cons.epi_not_onto_example(k, min(s, k.horizon), n)
        diag, trace = res.diagnostics, res.trace
        if "f1" in args:
            extra = cons.case_identities(res, env.fun(args, "f1"), env.fun(args, "f2"), env.rel(args, "S"))
            diag.checks += [(f"case-{label}", status, detail) for label, status, detail in extra.checks]
            diag.facts += extra.facts
    elif which == "ceer-coeq":
        h = env.fun(args, "h")
        res = cons.ceer_as_coequalizer(h, s, n)
        diag = cons.Diagnostics("ceer-coeq")
        diag.fact("h", h)
        diag.fact("classes", cr.classes_count(res.Z, s, n))
        diag.check("roundtrip", res.roundtrip)
    elif which == "remark":
        diag = cons.remark_demo(env.rel(args, "X", "id"), s, n)
    else:
        diag = cons.darkstar_closure_demo(
            env.rel(args, "X", "id"), env.rel(args, "Y", "id"), env.fun(args, "light", required=False), s, n
        )
    lines = diag.lines()
    out.emit("\n".join(lines), lines)
    out.write_file("diagnostics.txt", "".join(line + "\n" for line in lines))
    if trace is not None:
        out.write_file("trace.txt", format_trace(trace))
    return EXIT_OK if diag.ok else EXIT_CEX


def cmd_trace_replay(cfg: RunConfig, ns, out: _Out) -> int:
    args = _kv(ns.args)
    trace = parse_trace(ns.trace.read_text())
    if any(isinstance(ev, cr.Isolate) for ev in trace.events):
        seed = parse_seed(args["seed"]) if "seed" in args else cr.ZERO_REST_SEED
        rel: cr.RelationSpec = cr.coceer(seed, trace)
    else:
        rel = cr.FromPairs(cr.TraceBacked(trace))
    stages = sorted({0, *(ev.stage for ev in trace.events if ev.stage <= cfg.s)})
    lines = [f"kind={cr.kind(rel)}", f"events={len(trace)}"]
    human = []
    for t in stages:
        approx = cr.approximant(rel, t, cfg.n)
        lines.append(f"stage={t} classes={approx.classes_count} " + _fmt_classes(approx))
        human.append(f"stage {t}: " + _fmt_classes(approx))
    U = trace.enumerated(cfg.s)
    if U:
        lines.append("U=" + ",".join(map(str, U)))
        human.append("U = {" + ",".join(map(str, U)) + "}")
    out.emit("\n".join(human), lines)
    return EXIT_OK


COMMANDS = {"show": cmd_show, "verify": cmd_verify, "construct": cmd_construct, "trace-replay": cmd_trace_replay}


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str]:
    """Run the CLI and return ``(exit code, stdout text, stderr text)``."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    try:
        cfg = RunConfig(*ns.scope, ns.seed, ns.cap, ns.fmt, ns.out, ns.jobs, ns.relfile, ns.strict)
        out = _Out(cfg)
        code = COMMANDS[ns.command](cfg, ns, out)
        return code, out.text(), ""
    except SurrogateError as err:
        return EXIT_SURROGATE, "", f"surrogate violation: {err.invariant or 'input'}: {err}\n"
    except (UsageError, ParseError, FileNotFoundError, KeyError) as err:
        return EXIT_USAGE, "", f"usage: {err}\n"
    except EeqError as err:
        return EXIT_CEX, "", f"error: {err}\n"


def main(argv: Sequence[str] | None = None) -> int:
    code, stdout, stderr = run(argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
